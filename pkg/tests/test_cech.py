"""Cech cochain tests: coboundaries, cocycle checks, cup products, Higgs gluing."""

import cmath

import numpy as np
import pytest

from gl11.cech import (
    Cochain,
    HiggsCechData,
    Nerve,
    ObstructionError,
    TransitionData,
    check_gl_cocycle,
    check_sl_cocycle,
    coboundary_solution_dim,
    cup_product,
    genus1_nerve,
    gl_higgs_constraints,
    higgs_from_global,
    sl_higgs_obstruction,
    solve_coboundary,
    tetrahedron_nerve,
    transition_from_frames,
    triangle_nerve,
    two_cocycle_g,
)
from gl11.grassmann import GrassmannElement, random_element, random_even, random_odd
from gl11.supergroup import GroupCoords, SuperMatrix11, random_coords

N = 8
TOL = 1e-9


def t(*indices):
    return GrassmannElement.monomial(N, indices)


def scalar(c):
    return GrassmannElement.scalar(N, c)


def random_cochain(rng, nerve, degree, parity="any"):
    c = Cochain(nerve, degree, N)
    for s in nerve.simplices[degree]:
        c.values[s] = random_element(rng, N, parity=parity, num_terms=3)
    return c


def random_frames(rng, nerve, sl=False):
    return {v: random_coords(rng, N, sl=sl) for v in nerve.vertices}


def test_nerve_face_closure_enforced():
    with pytest.raises(ValueError):
        Nerve([1, 2, 3], {2: [(1, 2, 3)]})
    with pytest.raises(ValueError):
        Nerve([1, 2], {1: [(1, 1)]})


def test_coboundary_of_zero_cochain():
    nerve = triangle_nerve()
    f = Cochain.zero(nerve, 0, N)
    assert f.coboundary().max_abs() == 0.0


def test_coboundary_definition_degree0():
    nerve = triangle_nerve()
    f = Cochain(nerve, 0, N, {(1,): t(1), (2,): t(2), (3,): scalar(1)})
    df = f.coboundary()
    assert df.value((1, 2)).is_close(t(2) - t(1))
    assert df.value((2, 1)).is_close(t(1) - t(2))


def test_delta_squared_is_zero():
    rng = np.random.default_rng(0)
    nerve = tetrahedron_nerve(solid=True)
    for degree in (0, 1):
        for _ in range(20):
            c = random_cochain(rng, nerve, degree)
            assert c.coboundary().coboundary().max_abs() <= 1e-12


def test_sl_cocycle_checks():
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    report = check_sl_cocycle(data)
    assert report.ok and report.max_residual == 0.0

    # alpha_13 = t1 + t2 closes the cocycle alpha_12 = t1, alpha_23 = t2
    data = TransitionData(nerve, N)
    data.set_edge((1, 2), alpha=t(1))
    data.set_edge((2, 3), alpha=t(2))
    data.set_edge((1, 3), alpha=t(1) + t(2))
    assert check_sl_cocycle(data).ok

    # breaking alpha_13 leaves exactly the defect t2
    data.set_edge((1, 3), alpha=t(1))
    report = check_sl_cocycle(data)
    bad = [c for c in report.failing()]
    assert len(bad) == 1 and bad[0].name == "alpha_cocycle[123]"
    assert bad[0].residual == pytest.approx(1.0)


def test_sl_cocycle_rejects_gl_data():
    data = TransitionData(triangle_nerve(), N)
    data.set_edge((1, 2), s=scalar(0.5))
    with pytest.raises(ValueError):
        check_sl_cocycle(data)


def test_h_identity_includes_quadratic_term_and_integer():
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    data.set_edge((1, 2), alpha=t(1))
    data.set_edge((2, 3), beta=t(2))
    data.set_edge((1, 3), alpha=t(1), beta=t(2), h=0.5 * t(1, 2))
    assert check_sl_cocycle(data).ok
    # shifting h_13 by 2 pi i is absorbed by n_123 = 1
    data.set_edge((1, 3), h=0.5 * t(1, 2) + scalar(2j * cmath.pi))
    assert not check_sl_cocycle(data).ok
    data.integers[(1, 2, 3)] = 1
    assert check_sl_cocycle(data).ok


def test_gl_cocycle_frame_construction():
    rng = np.random.default_rng(1)
    for nerve in (triangle_nerve(), tetrahedron_nerve()):
        for _ in range(20):
            data = transition_from_frames(nerve, random_frames(rng, nerve))
            report = check_gl_cocycle(data)
            assert report.ok
            assert report.max_residual < 1e-12


def test_gl_cocycle_twist_example():
    # constant twist s_12 = log 2: alpha_13 = alpha_12 + alpha_23 / 2
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    s12 = scalar(cmath.log(2))
    data.set_edge((1, 2), s=s12, alpha=t(1))
    data.set_edge((2, 3), alpha=t(2))
    data.set_edge((1, 3), s=s12, alpha=t(1) + 0.5 * t(2))
    report = check_gl_cocycle(data)
    assert report.worst("alpha_cocycle") < 1e-12
    assert report.worst("s_additivity") < 1e-12
    data.set_edge((1, 3), alpha=t(1) + t(2))
    assert check_gl_cocycle(data).worst("alpha_cocycle") == pytest.approx(0.5)


def test_gl_reduces_to_sl_on_sl_data():
    rng = np.random.default_rng(2)
    nerve = tetrahedron_nerve()
    data = transition_from_frames(nerve, random_frames(rng, nerve, sl=True))
    sl_report = check_sl_cocycle(data)
    gl_report = check_gl_cocycle(data)
    assert sl_report.ok == gl_report.ok
    shared = {c.name for c in sl_report.checks}
    gl_named = {c.name: c.residual for c in gl_report.checks if c.name in shared}
    for c in sl_report.checks:
        assert gl_named[c.name] == pytest.approx(c.residual, abs=1e-12)


def test_two_cocycle_example_and_closedness():
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    data.set_edge((1, 2), alpha=t(1))
    data.set_edge((2, 3), beta=t(2))
    data.set_edge((1, 3), alpha=t(1), beta=t(2), h=0.5 * t(1, 2))
    g = two_cocycle_g(data)
    assert g.value((1, 2, 3)).is_close(0.5 * t(1, 2))

    rng = np.random.default_rng(3)
    nerve = tetrahedron_nerve(solid=True)
    for _ in range(20):
        data = transition_from_frames(nerve, random_frames(rng, nerve))
        g = two_cocycle_g(data)  # asserts antisymmetry and delta g = 0 internally
        assert g.coboundary().max_abs() < 1e-10


def test_two_cocycle_zero_for_zero_alpha():
    data = TransitionData(triangle_nerve(), N)
    g = two_cocycle_g(data)
    assert g.max_abs() == 0.0


def test_solve_coboundary_roundtrip():
    rng = np.random.default_rng(4)
    nerve = tetrahedron_nerve()
    for _ in range(20):
        f0 = random_cochain(rng, nerve, 1)
        g = f0.coboundary()
        f = solve_coboundary(g)
        assert (f.coboundary() - g).max_abs() < 1e-10


def test_solve_coboundary_zero_gives_zero():
    g = Cochain.zero(tetrahedron_nerve(), 2, N)
    f = solve_coboundary(g)
    assert f.max_abs() == 0.0


def test_solve_coboundary_obstruction_on_sphere():
    # the boundary of the tetrahedron has H^2 nonzero: a 2-cochain with
    # nonvanishing total alternating sum is not a coboundary
    nerve = tetrahedron_nerve(solid=False)
    g = Cochain.zero(nerve, 2, N)
    g.values[(1, 2, 3)] = scalar(1.0)
    with pytest.raises(ObstructionError):
        solve_coboundary(g)


def test_cup_product_examples():
    nerve = triangle_nerve()
    delta = Cochain(nerve, 0, N, {(v,): t(3) for v in (1, 2, 3)})
    alpha = Cochain(nerve, 1, N, {(1, 2): t(1), (2, 3): t(2), (1, 3): t(1) + t(2)})
    cup = cup_product(delta, alpha)
    assert cup.value((1, 2)).is_close(t(3) * t(1))
    zero = Cochain.zero(nerve, 1, N)
    assert cup_product(delta, zero).max_abs() == 0.0


def test_cup_product_leibniz():
    rng = np.random.default_rng(5)
    nerve = tetrahedron_nerve(solid=True)
    for p, q in ((0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)):
        for _ in range(10):
            pu = "even" if rng.integers(2) else "odd"
            u = random_cochain(rng, nerve, p, parity=pu)
            v = random_cochain(rng, nerve, q)
            sign = 1.0 if pu == "even" else -1.0
            # delta(u cup v) = delta u cup v + (-1)^p (u cup delta v), with the
            # cochain sign (-1)^p; Grassmann parity of u plays no role here
            lhs = cup_product(u, v).coboundary()
            rhs = cup_product(u.coboundary(), v) + (
                cup_product(u, v.coboundary()) if p % 2 == 0
                else -cup_product(u, v.coboundary()))
            assert (lhs - rhs).max_abs() < 1e-10


def test_sl_higgs_obstruction_trivial_and_constructed():
    rng = np.random.default_rng(6)
    nerve = tetrahedron_nerve()
    # all odd data zero: t = 0, eta = 0
    data = TransitionData(nerve, N)
    higgs = HiggsCechData(nerve, N)
    t_c, eta, report = sl_higgs_obstruction(data, higgs)
    assert report.ok and eta is not None and t_c.max_abs() == 0.0

    # frame-constructed supertraceless Higgs data glues with zero obstruction
    for _ in range(10):
        frames = random_frames(rng, nerve)
        data = transition_from_frames(nerve, frames)
        a = random_even(rng, N, num_terms=2)
        phi = SuperMatrix11(a, random_odd(rng, N, num_terms=2),
                            random_odd(rng, N, num_terms=2), a)
        higgs = higgs_from_global(nerve, frames, phi)
        t_c, eta, report = sl_higgs_obstruction(data, higgs)
        assert report.ok
        assert eta is not None


def test_sl_higgs_obstruction_on_genus1():
    # on the four-chart cycle nerve the class of t is its signed loop sum;
    # [delta][alpha] = [beta][gamma] holds iff that sum vanishes
    nerve = genus1_nerve()
    data = TransitionData(nerve, N)
    data.set_edge((1, 2), alpha=t(2))
    data.set_edge((3, 4), alpha=t(3))
    higgs = HiggsCechData(nerve, N, delta={v: t(1) for v in nerve.vertices})
    t_c, eta, report = sl_higgs_obstruction(data, higgs)
    assert t_c.value((1, 2)).is_close(t(1) * t(2))
    assert t_c.value((3, 4)).is_close(t(1) * t(3))
    assert eta is None and report.info["obstructed"]

    # alpha_14 closes the loop: class zero although t is nonzero edge-wise
    data.set_edge((1, 4), alpha=t(2) + t(3))
    t_c, eta, report = sl_higgs_obstruction(data, higgs)
    assert t_c.max_abs() > 0.5
    assert eta is not None
    assert (eta.coboundary() - t_c).max_abs() < 1e-10


def test_sl_higgs_requires_b_zero_and_sections():
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    higgs = HiggsCechData(nerve, N, b={v: scalar(1.0) for v in (1, 2, 3)})
    with pytest.raises(ValueError):
        sl_higgs_obstruction(data, higgs)
    higgs = HiggsCechData(nerve, N, delta={1: t(1), 2: t(2), 3: t(1)})
    with pytest.raises(ValueError):
        sl_higgs_obstruction(data, higgs)


def test_gl_higgs_constraints_frame_construction():
    rng = np.random.default_rng(7)
    for nerve in (triangle_nerve(), tetrahedron_nerve()):
        for _ in range(10):
            frames = random_frames(rng, nerve)
            data = transition_from_frames(nerve, frames)
            a = random_even(rng, N, num_terms=2)
            b = random_even(rng, N, num_terms=2)
            phi = SuperMatrix11(a + 0.5 * b, random_odd(rng, N, num_terms=2),
                                random_odd(rng, N, num_terms=2), a - 0.5 * b)
            higgs = higgs_from_global(nerve, frames, phi)
            report = gl_higgs_constraints(data, higgs)
            assert report.ok, report.format_text()
            assert report.info["c_exact"]


def test_gl_higgs_constraints_b_zero_matches_sl():
    rng = np.random.default_rng(8)
    nerve = tetrahedron_nerve()
    frames = random_frames(rng, nerve)
    data = transition_from_frames(nerve, frames)
    a = random_even(rng, N, num_terms=2)
    phi = SuperMatrix11(a, random_odd(rng, N, num_terms=2),
                        random_odd(rng, N, num_terms=2), a)
    higgs = higgs_from_global(nerve, frames, phi)
    report = gl_higgs_constraints(data, higgs)
    assert report.ok
    _, eta, sl_report = sl_higgs_obstruction(data, higgs)
    assert sl_report.ok and (eta is not None) == report.info["c_exact"]


def test_gl_higgs_all_even_data_passes_trivially():
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    higgs = HiggsCechData(nerve, N, b={v: scalar(2.0) for v in (1, 2, 3)})
    report = gl_higgs_constraints(data, higgs)
    assert report.ok and report.max_residual == 0.0


def test_solution_space_dimension():
    # connected nerves: constants are the kernel of delta on 0-cochains
    assert coboundary_solution_dim(triangle_nerve(), 0) == 1
    assert coboundary_solution_dim(genus1_nerve(), 0) == 1


def frame_change(data, frames):
    """g'_ij = r_i g_ij r_j^{-1}: the transition data of changed local frames."""
    from gl11.supergroup import coords_inverse, coords_product

    out = TransitionData(data.nerve, data.n)
    for (i, j) in data.nerve.simplices[1]:
        c = GroupCoords(data.h(i, j), data.s(i, j), data.alpha(i, j),
                        data.beta(i, j))
        c = coords_product(coords_product(frames[i], c), coords_inverse(frames[j]))
        out.set_edge((i, j), h=c.h, s=c.s, alpha=c.alpha, beta=c.beta)
    return out


def loop_sum(data, accessor):
    """Signed sum of an edge quantity around the four-chart cycle."""
    total = accessor(1, 2) + accessor(2, 3) + accessor(3, 4) - accessor(1, 4)
    return total


def test_equivalence_preserves_odd_classes_on_genus1():
    # vertex frame changes shift alpha and beta by coboundaries, so their
    # loop classes on the cycle nerve are invariant
    rng = np.random.default_rng(12)
    nerve = genus1_nerve()
    data = TransitionData(nerve, N)
    for e in nerve.simplices[1]:
        data.set_edge(e, h=random_even(rng, N, num_terms=2),
                      alpha=random_odd(rng, N, num_terms=2),
                      beta=random_odd(rng, N, num_terms=2))
    frames = {v: random_coords(rng, N, sl=True) for v in nerve.vertices}
    changed = frame_change(data, frames)
    assert loop_sum(changed, changed.alpha).is_close(loop_sum(data, data.alpha))
    assert loop_sum(changed, changed.beta).is_close(loop_sum(data, data.beta))


def test_equivalence_preserves_k_class_on_tetrahedron():
    from gl11.cech import multiplicative_class

    rng = np.random.default_rng(13)
    nerve = tetrahedron_nerve()
    base_frames = random_frames(rng, nerve, sl=True)
    data = transition_from_frames(nerve, base_frames)
    frames = {v: random_coords(rng, N, sl=True) for v in nerve.vertices}
    changed = frame_change(data, frames)
    assert check_gl_cocycle(changed).ok
    k_old = multiplicative_class(data)
    k_new = multiplicative_class(changed)
    # the difference of representatives is exact (equal classes)
    eta = solve_coboundary(k_new - k_old)
    assert (eta.coboundary() - (k_new - k_old)).max_abs() < 1e-9


def test_multiplicative_class_is_exp_cocycle():
    from gl11.cech import multiplicative_class

    rng = np.random.default_rng(10)
    for nerve in (triangle_nerve(), tetrahedron_nerve()):
        for _ in range(10):
            data = transition_from_frames(nerve, random_frames(rng, nerve))
            k = multiplicative_class(data)
            for (i, j, kk) in nerve.simplices[2]:
                lhs = k.value((i, kk)).exp()
                rhs = k.value((i, j)).exp() * k.value((j, kk)).exp()
                assert lhs.is_close(rhs, tol=1e-9)


def test_t_cochain_first_term_is_cup_product():
    # t_ij = delta_i alpha_ij - beta_ij gamma_i: the first term is the cup
    # product of the 0-cochain delta with the 1-cochain alpha
    rng = np.random.default_rng(11)
    nerve = tetrahedron_nerve()
    frames = random_frames(rng, nerve, sl=True)
    data = transition_from_frames(nerve, frames)
    delta_val = t(1)
    higgs = HiggsCechData(nerve, N, delta={v: delta_val for v in nerve.vertices})
    t_c, _, _ = sl_higgs_obstruction(data, higgs)
    delta_cochain = Cochain(nerve, 0, N, {(v,): delta_val for v in nerve.vertices})
    alpha_cochain = Cochain(nerve, 1, N,
                            {e: data.alpha(*e) for e in nerve.simplices[1]})
    cup = cup_product(delta_cochain, alpha_cochain)
    for e in nerve.simplices[1]:
        assert t_c.value(e).is_close(cup.value(e))


def test_sl_check_h_mod_flag():
    nerve = triangle_nerve()
    data = TransitionData(nerve, N)
    data.set_edge((1, 3), h=scalar(2j * cmath.pi))
    assert not check_sl_cocycle(data).ok
    assert check_sl_cocycle(data, h_mod_2pi=True).ok


def test_transition_data_json_roundtrip():
    rng = np.random.default_rng(9)
    nerve = tetrahedron_nerve()
    data = transition_from_frames(nerve, random_frames(rng, nerve))
    back = TransitionData.from_dict(nerve, data.to_dict())
    for (i, j) in nerve.simplices[1]:
        assert back.h(i, j).is_close(data.h(i, j))
        assert back.alpha(i, j).is_close(data.alpha(i, j))
