"""Independent floating-point and closed-form references.

Nothing here reuses the package's spin or curvature code paths.
"""

import numpy as np

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
ID = np.eye(2, dtype=complex)


def _kron_all(mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def jordan_wigner_gammas(n, volume_sign):
    """Matrices with g_i g_j + g_j g_i = -2 delta_ij via Pauli strings.

    For odd n the last generator is the (scaled) chirality operator, with
    its sign chosen so that g_1 ... g_n equals ``volume_sign``.
    """
    m = n // 2
    gens = []
    for j in range(m):
        pre = [SZ] * j
        post = [ID] * (m - j - 1)
        gens.append(1j * _kron_all(pre + [SX] + post))
        gens.append(1j * _kron_all(pre + [SY] + post))
    if n % 2:
        chir = np.eye(2 ** m, dtype=complex)
        for g in gens:
            chir = chir @ g
        # chir^2 = (-1)^{m} up to sign; scale to square -1
        c = chir @ chir
        lam = c[0, 0]
        last = chir / np.sqrt(-lam + 0j) if abs(lam + 1) > 1e-12 else chir.copy()
        vol = np.eye(2 ** m, dtype=complex)
        for g in gens + [last]:
            vol = vol @ g
        if abs(vol[0, 0] - volume_sign) > 1e-9:
            last = -last
        gens.append(last)
    return gens


def float_action(form, volume_sign=1):
    gens = jordan_wigner_gammas(form.dim, volume_sign)
    size = gens[0].shape[0]
    out = np.zeros((size, size), dtype=complex)
    for blade, c in form.items():
        m = np.eye(size, dtype=complex)
        for i in blade:
            m = m @ gens[i - 1]
        out += float(c) * m
    return out


def killing_form(L):
    """B(b_a, b_b) = tr(ad b_a ad b_b) over the whole algebra."""
    size = L.size

    def ad(a):
        m = np.zeros((size, size))
        for j in range(1, size + 1):
            for k, c in L.bracket(a, j).items():
                m[k - 1, j - 1] = float(c)
        return m

    ads = [ad(a) for a in range(1, size + 1)]
    return np.array([[np.trace(x @ y) for y in ads] for x in ads])


def homogeneous_scal(L):
    """Scal = -1/2 sum B(X_i, X_i) - 1/4 sum |[X_i, X_j]_m|^2 - |Z|^2.

    Valid for a reductive homogeneous space with orthonormal m-frame; Z is
    the mean-curvature vector sum_i U(X_i, X_i), which vanishes for the
    examples used here but is computed anyway.
    """
    n = L.dim_m
    B = killing_form(L)
    total = -0.5 * sum(B[i, i] for i in range(n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            vec = L.m_part(L.bracket(i, j))
            total -= 0.25 * sum(float(c) ** 2 for c in vec.values())
    z = np.zeros(n)
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            # U(X_i, X_i) = sum_k g([X_k, X_i]_m, X_i) X_k
            z[k - 1] += float(L.m_part(L.bracket(k, i)).get(i, 0))
    return total - float(z @ z)
