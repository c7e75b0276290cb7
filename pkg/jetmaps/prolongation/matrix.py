# jetmaps/prolongation/matrix.py

"""Total Jacobians and their symbolic inverses.

Layout is fixed project-wide: entry (i, k) of ``Df`` is D_i(f_k), row
= derivative direction, column = component.
"""

import logging
from itertools import permutations
from typing import List, Sequence, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.normal_form import ONE, ZERO, NormalForm, sum_forms
from jetmaps.algebra.ops import normalize
from jetmaps.config import get_config
from jetmaps.errors import SingularMatrix
from jetmaps.jets.context import JetContext
from jetmaps.jets.total import total_derivative_nf

logger = logging.getLogger(__name__)

Matrix = List[List[NormalForm]]


def total_jacobian_nf(components: Sequence[NormalForm], ctx: JetContext) -> Matrix:
    return [[total_derivative_nf(f, i, ctx) for f in components] for i in range(ctx.n)]


def total_jacobian(components: Sequence[ex.Expr], ctx: JetContext) -> List[List[ex.Expr]]:
    """Df with entry (i, k) = D_i(f_k), each entry normalized."""
    matrix = total_jacobian_nf([normalize(f) for f in components], ctx)
    return [[entry.to_expr() for entry in row] for row in matrix]


def _permutation_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def determinant_nf(matrix: Matrix) -> NormalForm:
    """Leibniz expansion; fine for the small sizes accepted here."""
    size = len(matrix)
    if size == 0:
        return ONE
    terms = []
    for perm in permutations(range(size)):
        product = ONE
        for row, col in enumerate(perm):
            product = product * matrix[row][col]
            if not product.terms:
                break
        if product.terms:
            terms.append(product if _permutation_sign(perm) > 0 else -product)
    return sum_forms(terms)


def _minor(matrix: Matrix, row: int, col: int) -> Matrix:
    return [
        [entry for k, entry in enumerate(line) if k != col]
        for i, line in enumerate(matrix)
        if i != row
    ]


def symbolic_inverse_nf(matrix: Matrix) -> Tuple[Matrix, NormalForm]:
    size = len(matrix)
    limit = get_config()["max_matrix_size"]
    if size > limit:
        raise SingularMatrix(f"matrices larger than {limit}x{limit} are not supported")
    det = determinant_nf(matrix)
    if det.is_zero():
        raise SingularMatrix("the total Jacobian is identically singular", determinant="0")
    det_inverse = det.power(-1)
    inverse: Matrix = [[ZERO] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            # adjugate is the transposed cofactor matrix
            cofactor = determinant_nf(_minor(matrix, j, i))
            if (i + j) % 2:
                cofactor = -cofactor
            inverse[i][j] = cofactor * det_inverse
    logger.debug("inverted a %dx%d total Jacobian", size, size)
    return inverse, det


def symbolic_inverse(matrix: Sequence[Sequence[ex.Expr]]) -> Tuple[List[List[ex.Expr]], ex.Expr]:
    """Inverse by the adjugate formula, plus the determinant.

    Raises:
        SingularMatrix: the determinant normalizes to zero, or the matrix
            is larger than ``max_matrix_size``.
    """
    nf_matrix = [[normalize(entry) for entry in row] for row in matrix]
    inverse, det = symbolic_inverse_nf(nf_matrix)
    return [[entry.to_expr() for entry in row] for row in inverse], det.to_expr()


def mat_mul_nf(left: Matrix, right: Matrix) -> Matrix:
    inner = len(right)
    cols = len(right[0]) if right else 0
    return [
        [sum_forms(row[k] * right[k][j] for k in range(inner)) for j in range(cols)]
        for row in left
    ]
