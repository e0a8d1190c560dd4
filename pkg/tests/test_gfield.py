import pytest
from hypothesis import given, settings, strategies as st

from hermquot.gfield import (
    CheckError,
    Felt,
    LinearizedSolver,
    ParameterError,
    _find_modulus,
    _int_digits,
    arith,
    find_omega,
    frobenius,
    make_field,
    rel_trace,
    solve_linearized,
    subfield_elements,
)


# ---------------------------------------------------------------- oracles

def poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return tuple(out)


def poly_divides(d, f, p):
    f = [c % p for c in f]
    dd = len(d) - 1
    inv = pow(d[-1], -1, p)
    for i in range(len(f) - 1, dd - 1, -1):
        c = f[i]
        if c:
            s = (c * inv) % p
            for j in range(dd + 1):
                f[i - dd + j] = (f[i - dd + j] - s * d[j]) % p
    return not any(f[:dd])


def monic_polys(deg, p):
    for m in range(p ** deg):
        yield _int_digits(m, p) + (0,) * (deg - len(_int_digits(m, p))) + (1,)


def irreducible_by_trial_division(f, p):
    # independent of the Rabin test in gfield
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for cand in monic_polys(d, p):
            if poly_divides(cand, f, p):
                return False
    return True


def first_irreducible_bruteforce(p, deg):
    n = p ** deg
    for m in range(n + 1, 2 * n):
        digs = _int_digits(m, p)
        if irreducible_by_trial_division(digs, p):
            return m
    raise AssertionError


def eval_linearized(ctx, coeffs, y):
    acc = 0
    for i, c in enumerate(coeffs):
        acc = ctx.add(acc, ctx.mul(c, ctx.frob(y, i)))
    return acc


# ---------------------------------------------------------------- modulus

@pytest.mark.parametrize("p,deg", [(2, 4), (2, 8), (2, 12), (3, 4), (3, 8), (5, 4)])
def test_modulus_matches_bruteforce(p, deg):
    assert _find_modulus(p, deg) == first_irreducible_bruteforce(p, deg)


def test_modulus_frozen_values():
    # X^4 + X + 1 over F_2 and X^4 + X + 2 over F_3, checked offline
    assert _find_modulus(2, 4) == 0b10011 == 19
    assert _find_modulus(3, 4) == 81 + 3 + 2 == 86


def test_make_field_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        make_field(4, 1)
    with pytest.raises(ParameterError):
        make_field(2, 0)
    with pytest.raises(ParameterError):
        make_field(2, 9)  # 2^36 over the default bound


def test_make_field_is_cached():
    assert make_field(2, 3) is make_field(2, 3)


# ---------------------------------------------------------------- arithmetic

CTXS = [make_field(2, 1), make_field(2, 3), make_field(3, 1), make_field(3, 2)]


@pytest.mark.parametrize("ctx", CTXS, ids=lambda c: f"p{c.p}h{c.h}")
def test_field_axioms_exhaustive_small(ctx):
    if ctx.order > 128:
        pytest.skip("exhaustive pass only for the smallest context")
    els = range(ctx.order)
    for a in els:
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
    for a in els:
        for b in els:
            assert ctx.add(a, b) == ctx.add(b, a)
            assert ctx.mul(a, b) == ctx.mul(b, a)


@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_field_axioms_random(data):
    ctx = data.draw(st.sampled_from(CTXS))
    a = data.draw(st.integers(0, ctx.order - 1))
    b = data.draw(st.integers(0, ctx.order - 1))
    c = data.draw(st.integers(0, ctx.order - 1))
    assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
    assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
    assert ctx.sub(a, b) == ctx.add(a, ctx.neg(b))
    if b:
        assert ctx.mul(ctx.div(a, b), b) == a


@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_frobenius_is_a_field_automorphism(data):
    ctx = data.draw(st.sampled_from(CTXS))
    a = data.draw(st.integers(0, ctx.order - 1))
    b = data.draw(st.integers(0, ctx.order - 1))
    k = data.draw(st.integers(0, ctx.deg))
    assert ctx.frob(a, k) == ctx.pow(a, ctx.p ** k)
    assert ctx.frob(ctx.add(a, b), k) == ctx.add(ctx.frob(a, k), ctx.frob(b, k))
    assert ctx.frob(ctx.mul(a, b), k) == ctx.mul(ctx.frob(a, k), ctx.frob(b, k))
    assert ctx.frob(a, ctx.deg) == a


def test_pow_matches_repeated_multiplication():
    ctx = make_field(3, 1)
    for a in range(ctx.order):
        acc = 1
        for e in range(1, 6):
            acc = ctx.mul(acc, a)
            assert ctx.pow(a, e) == acc


def test_mult_order_bruteforce():
    ctx = make_field(3, 1)
    for a in range(1, ctx.order):
        acc, k = a, 1
        while acc != 1:
            acc = ctx.mul(acc, a)
            k += 1
        assert ctx.mult_order(a) == k


# ---------------------------------------------------------------- subfields

@pytest.mark.parametrize("ctx", CTXS, ids=lambda c: f"p{c.p}h{c.h}")
def test_subfield_sizes_and_closure(ctx):
    for m in (1, ctx.h, 2 * ctx.h, ctx.deg):
        els = ctx.subfield_encodings(m)
        assert len(els) == ctx.p ** m
        assert list(els[: ctx.p]) == list(range(ctx.p))
    q2 = ctx.subfield_encodings(2 * ctx.h)
    sample = list(q2)[:20]
    for a in sample:
        for b in sample:
            assert ctx.in_subfield(ctx.mul(a, b), 2 * ctx.h)
            assert ctx.in_subfield(ctx.add(a, b), 2 * ctx.h)


def test_subfield_elements_returns_felts():
    ctx = make_field(2, 2)
    els = subfield_elements(ctx, ctx.h)
    assert [e.n for e in els] == list(ctx.subfield_encodings(ctx.h))
    assert all(isinstance(e, Felt) for e in els)


def test_prime_subfield_is_the_digit_constants():
    ctx = make_field(3, 2)
    assert list(ctx.subfield_encodings(1)) == [0, 1, 2]


# ---------------------------------------------------------------- trace, omega

@pytest.mark.parametrize("ctx", CTXS, ids=lambda c: f"p{c.p}h{c.h}")
def test_rel_trace_lands_in_subfield_and_is_additive(ctx):
    h = ctx.h
    els = list(ctx.subfield_encodings(2 * h))[:25]
    for a in els:
        t = rel_trace(ctx, a, h, 2 * h)
        assert ctx.in_subfield(t.n, h)
        # trace of the tower composes
        assert rel_trace(ctx, t, 1, h).n == rel_trace(ctx, a, 1, 2 * h).n
    for a in els[:8]:
        for b in els[:8]:
            lhs = rel_trace(ctx, ctx.add(a, b), h, 2 * h).n
            rhs = ctx.add(rel_trace(ctx, a, h, 2 * h).n, rel_trace(ctx, b, h, 2 * h).n)
            assert lhs == rhs


def test_rel_trace_surjective_onto_subfield():
    ctx = make_field(3, 1)
    images = {rel_trace(ctx, a, 1, 2).n for a in ctx.subfield_encodings(2)}
    assert images == {0, 1, 2}


def test_rel_trace_rejects_bad_degrees():
    ctx = make_field(2, 2)
    with pytest.raises(ParameterError):
        rel_trace(ctx, 1, 3, 4)
    with pytest.raises(ParameterError):
        rel_trace(ctx, 1, 1, 3)
    # element outside the claimed subfield
    outside = next(n for n in range(ctx.order) if not ctx.in_subfield(n, 2))
    with pytest.raises(ParameterError):
        rel_trace(ctx, outside, 1, 2)


@pytest.mark.parametrize("ctx", CTXS, ids=lambda c: f"p{c.p}h{c.h}")
def test_omega_defining_property(ctx):
    w = find_omega(ctx)
    assert ctx.pow(w.n, ctx.q - 1) == ctx.neg(1)
    assert ctx.in_subfield(w.n, 2 * ctx.h)
    if ctx.p == 2:
        assert w.n == 1


def test_omega_uses_first_primitive_element():
    ctx = make_field(3, 1)
    target = ctx.q ** 2 - 1
    g = next(n for n in ctx.subfield_encodings(2) if n > 1 and ctx.mult_order(n) == target)
    assert find_omega(ctx).n == ctx.pow(g, (ctx.q + 1) // 2)


# ---------------------------------------------------------------- linearized solves

@pytest.mark.parametrize("p,h,m", [(2, 2, 2), (2, 2, 4), (3, 1, 2), (3, 2, 2)])
def test_solver_against_exhaustive_substitution(p, h, m):
    ctx = make_field(p, h)
    dom = list(ctx.subfield_encodings(m))
    pool = list(ctx.subfield_encodings(2 * h))
    cases = [
        [0, 1],                      # y^p
        [1, 1],                      # y + y^p
        [pool[-1], 0, 1],            # c*y + y^(p^2)
        [pool[2], pool[3]],
        [0, 0],                      # zero map
    ]
    for coeffs in cases:
        solver = LinearizedSolver(ctx, coeffs, m)
        rhs_values = {eval_linearized(ctx, coeffs, y) for y in dom}
        rhs_values.add(pool[1])
        rhs_values.add(pool[-1])
        for rhs in rhs_values:
            expect = sorted(y for y in dom if eval_linearized(ctx, coeffs, y) == rhs)
            assert solver.solve(rhs) == expect
            assert solver.count(rhs) == len(expect)


def test_solver_fiber_sizes_are_kernel_or_zero():
    ctx = make_field(2, 3)
    solver = LinearizedSolver(ctx, [1, 1], 2 * ctx.h)  # y + y^2
    sizes = {solver.count(r) for r in ctx.subfield_encodings(2 * ctx.h)}
    assert sizes == {0, solver.kernel_size}
    assert solver.kernel_size == 2  # kernel of y^2 + y is F_2


def test_solve_linearized_wrapper():
    ctx = make_field(3, 1)
    sols = solve_linearized(ctx, [1, 1], 2, 2)  # y + y^3 = 2 over F_9
    assert all(isinstance(s, Felt) for s in sols)
    for s in sols:
        assert ctx.add(s.n, ctx.frob(s.n, 1)) == 2
    brute = [y for y in ctx.subfield_encodings(2) if ctx.add(y, ctx.frob(y, 1)) == 2]
    assert [s.n for s in sols] == brute


# ---------------------------------------------------------------- Felt and arith

def test_felt_operators():
    ctx = make_field(3, 1)
    a = Felt(ctx, 5)
    b = Felt(ctx, 7)
    assert (a + b).n == ctx.add(5, 7)
    assert (a - b).n == ctx.sub(5, 7)
    assert (a * b).n == ctx.mul(5, 7)
    assert (a / b) * b == a
    assert (-a).n == ctx.neg(5)
    assert (a ** 3).n == ctx.pow(5, 3)
    assert a.frob().n == ctx.frob(5, 1)
    assert a + 2 == Felt(ctx, ctx.add(5, 2))
    assert 2 * a == a + a
    assert bool(Felt(ctx, 0)) is False
    assert int(b) == 7


def test_felt_rejects_foreign_operands():
    ctx = make_field(3, 1)
    other = make_field(2, 1)
    with pytest.raises(ParameterError):
        Felt(ctx, 5) + Felt(other, 1)
    with pytest.raises(TypeError):
        Felt(ctx, 5) + 3  # 3 is not a prime-field constant here
    with pytest.raises(ParameterError):
        Felt(ctx, ctx.order)


def test_arith_dispatcher():
    ctx = make_field(2, 2)
    assert arith(ctx, "add", 3, 5).n == 3 ^ 5
    assert arith(ctx, "mul", 3, 5).n == ctx.mul(3, 5)
    assert arith(ctx, "inv", 7).n == ctx.inv(7)
    assert arith(ctx, "pow", 3, -1).n == ctx.inv(3)
    assert arith(ctx, "frob", 3, 2).n == ctx.frob(3, 2)
    with pytest.raises(ParameterError):
        arith(ctx, "xor", 1, 2)
    with pytest.raises(ParameterError):
        arith(ctx, "add", 1)
    with pytest.raises(ParameterError):
        arith(ctx, "add", 1, ctx.order + 5)
    with pytest.raises(ZeroDivisionError):
        arith(ctx, "inv", 0)


def test_checkerror_is_distinct_from_parametererror():
    assert issubclass(ParameterError, ValueError)
    assert issubclass(CheckError, ArithmeticError)
    assert not issubclass(CheckError, ParameterError)


def test_frobenius_wrapper():
    ctx = make_field(2, 2)
    x = Felt(ctx, 9)
    assert frobenius(ctx, x, 2).n == ctx.frob(9, 2)
    assert frobenius(ctx, 9).n == ctx.frob(9, 1)
