import random

import pytest

from oracles import (TYPES, db_beta, db_subst, db_type_subst, de_bruijn, fresh_names,
                     random_substitution, random_term, random_type_substitution, rename_bound)
from src.errors import IllTypedApplication, NotARedex, TypeMismatch
from src.hol.terms import (Abs, App, Const, Var, alpha_equal, beta_contract, free_vars,
                           fresh_variant, mk_comb, mk_eq, subst_term, subst_type, type_of)
from src.hol.types import (ALPHA, BOOL, IND, TypeApp, TypeVar, mk_fun_type, type_match,
                           type_subst, type_vars)

x_bool = Var("x", BOOL)
y_bool = Var("y", BOOL)
x_ind = Var("x", IND)
x = Var("x", ALPHA)
y = Var("y", ALPHA)


def _structural_type(t):
    """Type inference written independently of the library."""
    if isinstance(t, (Var, Const)):
        return t.ty
    if isinstance(t, Abs):
        return TypeApp("->", (t.bound.ty, _structural_type(t.body)))
    fun_ty = _structural_type(t.fun)
    assert fun_ty.op == "->" and fun_ty.args[0] == _structural_type(t.arg)
    return fun_ty.args[1]


class TestTypes:
    def test_leaf_and_identity(self):
        assert type_of(x_bool) == BOOL
        assert type_of(Abs(x_ind, x_ind)) == mk_fun_type(IND, IND)

    def test_redex_has_body_type(self):
        assert type_of(App(Abs(x_bool, x_bool), y_bool)) == BOOL

    def test_random_terms_match_structural_inference(self):
        rng = random.Random(7)
        for _ in range(300):
            ty = rng.choice(TYPES)
            t = random_term(rng, ty, 4)
            assert type_of(t) == ty == _structural_type(t)

    def test_ill_typed_application(self):
        with pytest.raises(IllTypedApplication):
            type_of(App(x_bool, y_bool))
        with pytest.raises(IllTypedApplication):
            type_of(App(Abs(x_bool, x_bool), x_ind))

    def test_mk_comb_checks_arrow(self):
        with pytest.raises(TypeMismatch):
            mk_comb(Abs(x_bool, x_bool), x_ind)
        assert mk_comb(Abs(x_bool, x_bool), y_bool) == App(Abs(x_bool, x_bool), y_bool)

    def test_type_match_binds_consistently(self):
        pattern = mk_fun_type(ALPHA, ALPHA)
        assert type_match(pattern, mk_fun_type(BOOL, BOOL)) == {ALPHA: BOOL}
        assert type_match(pattern, mk_fun_type(BOOL, IND)) is None

    def test_type_subst(self):
        ty = mk_fun_type(ALPHA, TypeVar("B"))
        assert type_subst({ALPHA: BOOL}, ty) == mk_fun_type(BOOL, TypeVar("B"))
        assert type_vars(ty) == [ALPHA, TypeVar("B")]


class TestAlpha:
    def test_bound_renaming(self):
        assert alpha_equal(Abs(x_bool, x_bool), Abs(y_bool, y_bool))

    def test_binder_types_compared(self):
        assert not alpha_equal(Abs(x_bool, x_bool), Abs(x_ind, x_ind))

    def test_same_name_different_type_are_distinct(self):
        assert x_bool != x_ind
        assert free_vars(App(Abs(x_ind, x_bool), x_ind)) == frozenset({x_bool, x_ind})

    def test_agrees_with_de_bruijn_on_random_pairs(self):
        rng = random.Random(11)
        agreed_equal = 0
        for i in range(1000):
            ty = rng.choice(TYPES)
            s = random_term(rng, ty, 3)
            if i % 2:
                t = rename_bound(s, fresh_names())
            else:
                t = random_term(rng, ty, 3)
            expected = de_bruijn(s) == de_bruijn(t)
            assert alpha_equal(s, t) == expected
            agreed_equal += expected
        assert agreed_equal >= 500

    def test_equivalence_relation(self):
        rng = random.Random(3)
        for _ in range(200):
            s = random_term(rng, BOOL, 3)
            t = rename_bound(s, fresh_names("a"))
            u = rename_bound(t, fresh_names("b"))
            assert alpha_equal(s, s)
            assert alpha_equal(s, t) and alpha_equal(t, s)
            assert alpha_equal(t, u) and alpha_equal(s, u)


class TestFreeVars:
    def test_examples(self):
        f = Var("f", mk_fun_type(ALPHA, ALPHA))
        assert free_vars(x) == frozenset({x})
        assert free_vars(Abs(x, App(f, y))) == frozenset({f, y})
        assert free_vars(Abs(x, App(f, x))) == frozenset({f})

    def test_substitution_bound(self):
        rng = random.Random(5)
        for _ in range(500):
            t = random_term(rng, rng.choice(TYPES), 3)
            sigma = random_substitution(rng)
            result = free_vars(subst_term(sigma, t))
            allowed = set(free_vars(t)) - set(sigma)
            for replacement in sigma.values():
                allowed |= free_vars(replacement)
            assert result <= allowed

    def test_fresh_variant(self):
        assert fresh_variant([], x) == x
        assert fresh_variant([x], x) == Var("x'", ALPHA)
        assert fresh_variant([x, Var("x'", ALPHA)], x) == Var("x''", ALPHA)
        assert fresh_variant([x_bool], x) == x

    def test_fresh_variant_avoids(self):
        rng = random.Random(13)
        for _ in range(200):
            avoid = {Var(rng.choice(["x", "x'", "x''", "y"]), rng.choice([BOOL, ALPHA])) for _ in range(4)}
            v = Var("x", rng.choice([BOOL, ALPHA]))
            fresh = fresh_variant(avoid, v)
            assert fresh not in avoid and fresh.ty == v.ty


class TestSubstitution:
    def test_capture_renames_binder(self):
        result = subst_term([(x, y)], Abs(y, x))
        assert result == Abs(Var("y'", ALPHA), y)

    def test_empty_substitution(self):
        t = Abs(y, x)
        assert subst_term([], t) is t

    def test_bound_occurrences_untouched(self):
        assert subst_term({x: y}, Abs(x, x)) == Abs(x, x)

    def test_ill_typed_substitution(self):
        with pytest.raises(TypeMismatch):
            subst_term([(x, x_bool)], x)
        with pytest.raises(TypeMismatch):
            subst_term([(x, y), (x, x)], x)

    def test_agrees_with_de_bruijn_oracle(self):
        rng = random.Random(17)
        for _ in range(1000):
            ty = rng.choice(TYPES)
            t = random_term(rng, ty, 3)
            sigma = random_substitution(rng)
            db_sigma = {(v.name, v.ty): de_bruijn(s) for v, s in sigma.items()}
            result = subst_term(sigma, t)
            assert de_bruijn(result) == db_subst(de_bruijn(t), db_sigma)
            assert type_of(result) == ty

    def test_composition_with_disjoint_domains(self):
        z = Var("z", ALPHA)
        c = Const("c", ALPHA)
        t = Abs(z, mk_eq(x, y))
        first = subst_term([(x, c)], t)
        assert alpha_equal(subst_term([(y, c)], first), subst_term([(x, c), (y, c)], t))


class TestTypeSubstitution:
    def test_example(self):
        assert subst_type({ALPHA: BOOL}, x) == Var("x", BOOL)
        assert subst_type([], x) is x

    def test_commutes_with_type_of(self):
        rng = random.Random(19)
        for _ in range(500):
            ty = rng.choice(TYPES)
            t = random_term(rng, ty, 3)
            theta = random_type_substitution(rng)
            assert type_of(subst_type(theta, t)) == type_subst(theta, ty)

    def test_agrees_with_de_bruijn_oracle(self):
        rng = random.Random(23)
        for _ in range(500):
            t = random_term(rng, rng.choice(TYPES), 3)
            theta = random_type_substitution(rng)
            assert de_bruijn(subst_type(theta, t)) == db_type_subst(de_bruijn(t), theta)

    def test_binder_renamed_when_types_collide(self):
        # \x:A. x:bool would capture once A becomes bool
        t = Abs(x, x_bool)
        result = subst_type({ALPHA: BOOL}, t)
        assert isinstance(result, Abs)
        assert result.bound != x_bool
        assert result.body == x_bool


class TestBeta:
    def test_identity_redex(self):
        assert beta_contract(App(Abs(x_bool, x_bool), y_bool)) == y_bool

    def test_capture_avoided(self):
        result = beta_contract(App(Abs(x, Abs(y, x)), y))
        assert result == Abs(Var("y'", ALPHA), y)

    def test_not_a_redex(self):
        with pytest.raises(NotARedex):
            beta_contract(y_bool)
        with pytest.raises(NotARedex):
            beta_contract(App(Var("f", mk_fun_type(BOOL, BOOL)), y_bool))

    def test_agrees_with_de_bruijn_oracle(self):
        rng = random.Random(29)
        for _ in range(500):
            arg_ty = rng.choice(TYPES)
            body_ty = rng.choice(TYPES)
            bound = Var(rng.choice(["x", "y", "z"]), arg_ty)
            redex = App(Abs(bound, random_term(rng, body_ty, 3)), random_term(rng, arg_ty, 2))
            result = beta_contract(redex)
            assert de_bruijn(result) == db_beta(de_bruijn(redex))
            assert type_of(result) == type_of(redex)
