"""
Gershgorin discs of associated matrices and the disc-union containment report.

For the finite truncation every eigenvalue lies in the union of the row
discs, and a union of discs that is disjoint from the remaining discs holds
exactly as many eigenvalues (with multiplicity) as it has discs.
"""
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from toruspdo.matrix.assoc import AssocMatrix, build_assoc_matrix
from toruspdo.symbol.symbol import FourierTable


@dataclass(frozen=True)
class GershgorinDisc:
    k: int
    center: complex
    radius_row: float
    radius_col: float

    def contains(self, z: complex, slack: float = 0.0, use_row: bool = True) -> bool:
        radius = self.radius_row if use_row else self.radius_col
        return abs(z - self.center) <= radius + slack

    def to_dict(self) -> dict:
        return {"k": self.k, "center": self.center, "r_row": self.radius_row, "r_col": self.radius_col}


def discs_from_matrix(matrix: AssocMatrix) -> list[GershgorinDisc]:
    """One disc per index k in [-n, n]; sums run over the whole window."""
    moduli = np.abs(matrix.entries)
    diag = np.diagonal(moduli)
    rows = moduli.sum(axis=1) - diag
    cols = moduli.sum(axis=0) - diag
    centers = np.diagonal(matrix.entries)
    return [
        GershgorinDisc(int(k), complex(centers[i]), float(max(rows[i], 0.0)), float(max(cols[i], 0.0)))
        for i, k in enumerate(matrix.indices)
    ]


def gershgorin_discs(table: FourierTable, n: int, band_tol: float = 1e-13) -> list[GershgorinDisc]:
    """
    Discs of the truncation of M_sigma on [-n, n]: center sigma_hat(0, k),
    radius_row = sum_{j != k} |M_{kj}|, radius_col = sum_{j != k} |M_{jk}|.

    Raises:
        WindowTooSmall: if n exceeds the table window
    """
    return discs_from_matrix(build_assoc_matrix(table, n, band_tol))


def disc_union_report(discs: list[GershgorinDisc], eigenvalues, slack: float = 1e-8) -> dict:
    """
    Cluster the row discs into connected components of the overlap graph and
    check eigenvalue containment and per-component multiplicities.

    A multiplicity claim is only made when there are at least two components.

    Returns:
        dict with components (disc indices k, size, eigenvalue count, ok flag),
        uncontained eigenvalues, violations and summary flags
    """
    eigenvalues = np.asarray(eigenvalues, dtype=complex).reshape(-1)
    centers = np.array([d.center for d in discs], dtype=complex)
    radii = np.array([d.radius_row for d in discs], dtype=float)

    gaps = np.abs(centers[:, None] - centers[None, :])
    adjacency = csr_matrix(gaps <= radii[:, None] + radii[None, :] + slack)
    count, labels = connected_components(adjacency, directed=False)

    # component of the first disc containing each eigenvalue (-1: none)
    inside = np.abs(eigenvalues[:, None] - centers[None, :]) <= radii[None, :] + slack
    owner = np.where(inside.any(axis=1), labels[np.argmax(inside, axis=1)], -1)

    claims = count > 1
    components = []
    violations = []
    for label in range(count):
        members = [discs[i].k for i in np.nonzero(labels == label)[0]]
        held = int(np.sum(owner == label))
        ok = (held == len(members)) if claims else None
        components.append({"ks": members, "size": len(members), "eigenvalue_count": held, "multiplicity_ok": ok})
        if claims and not ok:
            violations.append(f"component {members} holds {held} eigenvalues, expected {len(members)}")

    uncontained = [complex(z) for z in eigenvalues[owner < 0]]
    for z in uncontained:
        violations.append(f"eigenvalue {z} lies outside every disc")

    return {
        "component_count": int(count),
        "multiplicity_claims": bool(claims),
        "components": components,
        "uncontained": uncontained,
        "all_contained": not uncontained,
        "violations": violations,
        "ok": not violations,
    }
