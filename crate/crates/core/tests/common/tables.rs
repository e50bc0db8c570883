//! Values transcribed from the published homology tables.

/// Table cells `(i, j, rank, #Z/2, chain rank)` of the unknot disjoint from the granny knot.
#[rustfmt::skip]
pub const UNKNOT_GRANNY_CELLS: &[(i32, i32, usize, usize, usize)] = &[
    (-6, -18, 1, 0, 1),
    (-6, -16, 1, 0, 6),
    (-6, -14, 0, 0, 15),
    (-6, -12, 0, 0, 20),
    (-6, -10, 0, 0, 15),
    (-6, -8, 0, 0, 6),
    (-6, -6, 0, 0, 1),
    (-5, -16, 1, 1, 6),
    (-5, -14, 2, 1, 30),
    (-5, -12, 1, 0, 60),
    (-5, -10, 0, 0, 60),
    (-5, -8, 0, 0, 30),
    (-5, -6, 0, 0, 6),
    (-4, -14, 0, 1, 15),
    (-4, -12, 1, 1, 60),
    (-4, -10, 1, 0, 90),
    (-4, -8, 0, 0, 60),
    (-4, -6, 0, 0, 15),
    (-3, -14, 0, 0, 2),
    (-3, -12, 2, 0, 28),
    (-3, -10, 2, 0, 74),
    (-3, -8, 0, 0, 74),
    (-3, -6, 0, 0, 28),
    (-3, -4, 0, 0, 2),
    (-2, -12, 0, 0, 6),
    (-2, -10, 0, 2, 33),
    (-2, -8, 2, 2, 54),
    (-2, -6, 2, 0, 33),
    (-2, -4, 0, 0, 6),
    (-1, -10, 0, 0, 6),
    (-1, -8, 0, 0, 18),
    (-1, -6, 0, 0, 18),
    (-1, -4, 0, 0, 6),
    (0, -10, 0, 0, 1),
    (0, -8, 0, 0, 4),
    (0, -6, 1, 0, 6),
    (0, -4, 2, 0, 4),
    (0, -2, 1, 0, 1),
];

/// Differential ranks `(i, j, rank of d leaving (i,j))`.
pub const UNKNOT_GRANNY_ARROWS: &[(i32, i32, usize)] = &[
    (-6, -16, 5),
    (-6, -14, 15),
    (-6, -12, 20),
    (-6, -10, 15),
    (-6, -8, 6),
    (-6, -6, 1),
    (-5, -14, 13),
    (-5, -12, 39),
    (-5, -10, 45),
    (-5, -8, 24),
    (-5, -6, 5),
    (-4, -14, 2),
    (-4, -12, 20),
    (-4, -10, 44),
    (-4, -8, 36),
    (-4, -6, 10),
    (-3, -12, 6),
    (-3, -10, 28),
    (-3, -8, 38),
    (-3, -6, 18),
    (-3, -4, 2),
    (-2, -10, 5),
    (-2, -8, 14),
    (-2, -6, 13),
    (-2, -4, 4),
    (-1, -10, 1),
    (-1, -8, 4),
    (-1, -6, 5),
    (-1, -4, 2),
];

/// Same layout, for two disjoint trefoils.
pub const TREFOIL_PAIR_CELLS: &[(i32, i32, usize, usize, usize)] = &[
    (-6, -18, 1, 0, 1),
    (-6, -16, 0, 0, 6),
    (-6, -14, 0, 0, 15),
    (-6, -12, 0, 0, 20),
    (-6, -10, 0, 0, 15),
    (-6, -8, 0, 0, 6),
    (-6, -6, 0, 0, 1),
    (-5, -16, 0, 2, 6),
    (-5, -14, 2, 1, 30),
    (-5, -12, 0, 0, 60),
    (-5, -10, 0, 0, 60),
    (-5, -8, 0, 0, 30),
    (-5, -6, 0, 0, 6),
    (-4, -14, 0, 1, 15),
    (-4, -12, 0, 2, 60),
    (-4, -10, 1, 0, 90),
    (-4, -8, 0, 0, 60),
    (-4, -6, 0, 0, 15),
    (-3, -14, 0, 0, 2),
    (-3, -12, 2, 0, 28),
    (-3, -10, 2, 0, 74),
    (-3, -8, 0, 0, 74),
    (-3, -6, 0, 0, 28),
    (-3, -4, 0, 0, 2),
    (-2, -12, 0, 0, 6),
    (-2, -10, 0, 2, 33),
    (-2, -8, 2, 2, 54),
    (-2, -6, 2, 0, 33),
    (-2, -4, 0, 0, 6),
    (-1, -10, 0, 0, 6),
    (-1, -8, 0, 0, 18),
    (-1, -6, 0, 0, 18),
    (-1, -4, 0, 0, 6),
    (0, -10, 0, 0, 1),
    (0, -8, 0, 0, 4),
    (0, -6, 1, 0, 6),
    (0, -4, 2, 0, 4),
    (0, -2, 1, 0, 1),
];

pub const TREFOIL_PAIR_ARROWS: &[(i32, i32, usize)] = &[
    (-6, -16, 6),
    (-6, -14, 15),
    (-6, -12, 20),
    (-6, -10, 15),
    (-6, -8, 6),
    (-6, -6, 1),
    (-5, -14, 13),
    (-5, -12, 40),
    (-5, -10, 45),
    (-5, -8, 24),
    (-5, -6, 5),
    (-4, -14, 2),
    (-4, -12, 20),
    (-4, -10, 44),
    (-4, -8, 36),
    (-4, -6, 10),
    (-3, -12, 6),
    (-3, -10, 28),
    (-3, -8, 38),
    (-3, -6, 18),
    (-3, -4, 2),
    (-2, -10, 5),
    (-2, -8, 14),
    (-2, -6, 13),
    (-2, -4, 4),
    (-1, -10, 1),
    (-1, -8, 4),
    (-1, -6, 5),
    (-1, -4, 2),
];

/// Nonzero homology of the 11-crossing mutant knots: `(i, j, rank, #Z/2)`.
pub const MUTANT_KNOT_HOMOLOGY: &[(i32, i32, usize, usize)] = &[
    (-6, -13, 1, 0),
    (-5, -11, 1, 1),
    (-5, -9, 1, 0),
    (-4, -9, 1, 1),
    (-4, -7, 1, 0),
    (-3, -7, 2, 1),
    (-3, -5, 1, 0),
    (-2, -7, 1, 0),
    (-2, -5, 1, 2),
    (-2, -3, 2, 0),
    (-1, -5, 1, 1),
    (-1, -3, 2, 1),
    (-1, -1, 1, 0),
    (0, -3, 1, 1),
    (0, -1, 3, 1),
    (0, 1, 2, 0),
    (1, -1, 2, 1),
    (1, 1, 1, 1),
    (1, 3, 1, 0),
    (2, 1, 1, 2),
    (2, 3, 2, 0),
    (3, 3, 1, 1),
    (3, 5, 1, 0),
    (4, 5, 1, 1),
    (4, 7, 1, 0),
    (5, 7, 0, 1),
    (5, 9, 1, 0),
];
