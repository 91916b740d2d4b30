"""Literal extremal matrices, stored row by row exactly as displayed.

Parametric families live in :mod:`deltamod.constructions`; the matrices
here are kept verbatim so that any transcription error shows up in a diff.
"""

# lower-bound family at Delta = 3, m = 4, in its displayed column order
LOWER_BOUND_3_4 = (
    (1, 0, 0, 0, 2, 3, 1, 1, 1, 2, 2, 2, 3, 3, 3, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 1, 0),
    (0, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, -1, 0, 1),
    (0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, -1, 0, -1, -1),
)

# 9 primitive columns in dimension 3 whose contraction on e1 has 5 columns
CLAIM1 = (
    (1, 1, 0, 1, 0, 1, 1, 2, 1),
    (0, 2, 1, 1, 0, 0, 2, 2, 1),
    (0, 0, 0, 0, 1, 1, 1, 1, 1),
)

# the same matrix after a unimodular change of coordinates
CLAIM1_EQUIVALENT = (
    (1, 1, 0, 1, -1, 0, 0, 1, 0),
    (-1, 1, 1, 0, 0, -1, 1, 0, 0),
    (0, 0, 0, 0, 1, 1, 1, 1, 1),
)

# 20 primitive columns in dimension 5; the first 12 columns restricted to
# the first 4 rows form the 12-column example in dimension 4
PRIMITIVE_M5 = (
    (1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1),
    (0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1),
    (0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, -1, 0, 0, 1),
    (0, 0, 0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, -1, -1, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1),
)

# smallest independent subset with even column sum in the 12-column example
PRIMITIVE_M4_BSTAR = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 2))
