"""Independent closed forms shared by the test modules."""

from extq.rootdata import weights_below_bound


def box(rs, bound):
    """Dominant lam with <lam + rho, alpha_0^vee> <= bound."""
    hsr = rs.highest_short_root
    return list(weights_below_bound(hsr.coroot_coords, bound - hsr.pair(rs.rho)))


def a1_closed_form(lam, mu, ell):
    """Ext^1 between simple modules for affine A1: the A_0 sum with dihedral mu-values and Clebsch-Gordan."""
    if lam == mu:
        return 0
    (l1, l0), (m1, m0) = divmod(lam, ell), divmod(mu, ell)
    if l0 == m0:
        return 0
    # E^1(l0, m0) is {1: 1} exactly when l0 + m0 = ell - 2 (both then regular), else empty
    if l0 + m0 != ell - 2:
        return 0
    return int(abs(l1 - m1) == 1)


def a1_alcove_oracle(lam, mu, ell):
    """Linked regular weights in adjacent alcoves extend once; nothing else does."""
    a, b = lam + 1, mu + 1
    if a % ell == 0 or b % ell == 0:
        return 0
    linked = (a - b) % (2 * ell) == 0 or (a + b) % (2 * ell) == 0
    return int(linked and abs(a // ell - b // ell) == 1)


def a1_linked(lam, mu, ell):
    a, b = lam + 1, mu + 1
    return (a - b) % (2 * ell) == 0 or (a + b) % (2 * ell) == 0
