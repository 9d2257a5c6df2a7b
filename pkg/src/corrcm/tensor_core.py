"""Dense complex linear algebra on multipartite systems.

Operators and states are plain ``numpy`` arrays. Whenever the tensor
structure matters, the caller passes ``dims``: the ordered list of local
dimensions, system first and then ancillas in ascending label.
"""

from functools import reduce

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def kron(*ops):
    """Kronecker product of any number of matrices, left to right."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, [np.asarray(op) for op in ops])


def check_dims(dims, size=None):
    """Validate a subsystem layout and return it as a tuple of ints."""
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("layout must contain at least one site")
    if any(d < 2 for d in dims):
        raise ValueError(f"every local dimension must be >= 2, got {dims}")
    if size is not None and int(np.prod(dims)) != size:
        raise ValueError(f"layout {dims} does not match dimension {size}")
    return dims


def is_density_matrix(rho, tol=HERMITIAN_TOL, psd_tol=PSD_TOL):
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.abs(rho - rho.conj().T).max() > tol:
        return False
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        return False
    return np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() >= -psd_tol


def check_density_matrix(rho, dims=None):
    """Raise ``ValueError`` unless ``rho`` is a valid density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if dims is not None:
        check_dims(dims, rho.shape[0])
    if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise ValueError(f"density matrix has trace {np.trace(rho)}")
    lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2).min()
    if lam < -PSD_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {lam}")
    return rho


def _check_sites(dims, sites):
    sites = tuple(int(s) for s in sites)
    if len(set(sites)) != len(sites):
        raise ValueError(f"sites must be distinct, got {sites}")
    for s in sites:
        if not 0 <= s < len(dims):
            raise IndexError(f"site {s} out of range for layout {dims}")
    return sites


def apply_local(op, state, dims, sites):
    """Apply ``op`` to the given sites of a state vector or operator.

    For a vector ``psi`` this returns ``op_sites psi``; for a matrix ``rho``
    it returns ``op_sites @ rho`` (left multiplication only). The operator
    acts on ``sites`` in the listed order, identity elsewhere. Works on the
    reshaped tensor, so the full-dimension operator is never formed.
    """
    dims = check_dims(dims)
    sites = _check_sites(dims, sites)
    op = np.asarray(op)
    k = len(sites)
    local = [dims[s] for s in sites]
    if op.shape != (int(np.prod(local)),) * 2:
        raise ValueError(f"operator shape {op.shape} does not fit sites {sites} of {dims}")
    state = np.asarray(state)
    n = len(dims)
    tail = state.shape[1:]
    t = state.reshape(dims + tail)
    opt = op.reshape(local + local)
    t = np.tensordot(opt, t, axes=(list(range(k, 2 * k)), list(sites)))
    # tensordot puts the op's output axes first; move them back into place
    rest = [s for s in range(n) if s not in sites]
    order = list(sites) + rest
    inverse = np.argsort(order)
    t = np.transpose(t, list(inverse) + list(range(n, n + len(tail))))
    return t.reshape(state.shape)


def conjugate_local(op, rho, dims, sites):
    """Return ``O rho O^dagger`` with ``O`` acting on ``sites`` of ``dims``."""
    left = apply_local(op, rho, dims, sites)
    return apply_local(op, left.conj().T, dims, sites).conj().T


def embed(op, dims, sites):
    """Full-dimension matrix of ``op`` acting on ``sites`` (in that order)."""
    dims = check_dims(dims)
    return apply_local(op, np.eye(int(np.prod(dims)), dtype=complex), dims, sites)


def embed_two_site(op, dims, site_i, site_j):
    """Embed a 4x4 two-qubit operator on ``(site_i, site_j)`` of ``dims``.

    Raises ``IndexError`` for an out-of-range site and ``ValueError`` when
    either site is not a qubit or the sites coincide.
    """
    dims = check_dims(dims)
    sites = _check_sites(dims, (site_i, site_j))
    if any(dims[s] != 2 for s in sites):
        raise ValueError(f"sites {sites} of {dims} are not both qubits")
    if np.shape(op) != (4, 4):
        raise ValueError("two-site operator must be 4x4")
    return embed(op, dims, sites)


def partial_trace(rho, dims, keep):
    """Reduced operator on the sites in ``keep``.

    Kept sites appear in their original relative order regardless of the
    order in which ``keep`` lists them.
    """
    dims = check_dims(dims, np.shape(rho)[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one site")
    _check_sites(dims, keep)
    n = len(dims)
    t = np.asarray(rho).reshape(dims + dims)
    row = list(range(n))
    col = [n + s if s in keep else s for s in range(n)]
    out = [s for s in keep] + [n + s for s in keep]
    d = int(np.prod([dims[s] for s in keep]))
    return np.einsum(t, row + col, out).reshape(d, d)


def vector_reduced_state(psi, dims, keep):
    """Reduced density matrix of a pure state vector on ``keep``."""
    dims = check_dims(dims, np.size(psi))
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep must name at least one site")
    _check_sites(dims, keep)
    rest = [s for s in range(len(dims)) if s not in keep]
    t = np.transpose(np.asarray(psi).reshape(dims), keep + rest)
    d = int(np.prod([dims[s] for s in keep]))
    m = t.reshape(d, -1)
    return m @ m.conj().T


def pauli_two_body_unitary(axis_a, axis_b, angle):
    """``exp(-i angle sigma_a x sigma_b)``, exact because the generator squares to one."""
    gen = np.kron(PAULI[axis_a], PAULI[axis_b])
    return np.cos(angle) * np.eye(4, dtype=complex) - 1j * np.sin(angle) * gen


def matrix_power(m, n):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix_power needs a square matrix")
    if n < 0:
        raise ValueError("power must be nonnegative")
    return np.linalg.matrix_power(m, int(n))


def trace_distance(r1, r2):
    """Half the trace norm of ``r1 - r2`` for Hermitian inputs."""
    r1, r2 = np.asarray(r1), np.asarray(r2)
    if r1.shape != r2.shape:
        raise ValueError(f"shape mismatch {r1.shape} vs {r2.shape}")
    diff = r1 - r2
    lam = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return 0.5 * float(np.abs(lam).sum())


def random_density_matrix(dim, rng, rank=None):
    """Random density matrix from a Ginibre ensemble."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_unitary(dim, rng):
    """Haar-random unitary via QR with phase correction."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
