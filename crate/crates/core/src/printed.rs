//! Gram matrices as printed, entered verbatim (including any irregularities).

/// Printed Gram of S_{7.K3}.
pub const S7K3_PRINTED: &[&[i64]] = &[
    &[-4, 2, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0],
    &[2, -4, 2, 0, 0, 0, 0, 2, -1, 0, 0, 0, 0, -1, 1, 1, -1, 0],
    &[0, 2, -4, 2, 0, 0, 7, -1, 2, -1, 0, 0, 0, 0, 0, -1, 1, 1],
    &[0, 0, 2, -4, 2, 0, -7, 0, -1, 2, -1, 0, 1, -1, 0, 0, 0, -1],
    &[0, 0, 0, 2, -4, 2, 0, 0, 0, -1, 2, -1, -1, 1, 1, -1, 0, 0],
    &[0, 0, 0, 0, 2, -4, 0, 0, 0, 0, -1, 2, -1, 0, -1, 1, 1, -1],
    &[0, 0, 7, -7, 0, 0, -98, 0, 0, 0, 0, 0, 0, 0, 0, 0, 7, -21],
    &[-1, 2, -1, 0, 0, 0, 0, -6, 4, -1, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, -1, 2, -1, 0, 0, 0, 4, -6, 4, -1, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, -1, 2, -1, 0, 0, -1, 4, -6, 4, -1, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, -1, 2, -1, 0, 0, -1, 4, -6, 4, -1, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, -1, 2, 0, 0, 0, -1, 4, -6, 3, 0, 0, 0, 0, 0],
    &[0, 0, 0, 1, -1, -1, 0, 0, 0, 0, -1, 3, -4, 3, -1, 0, 0, 0],
    &[1, -1, 0, -1, 1, 0, 0, 0, 0, 0, 0, 3, -6, 4, -1, 0, 0, 0],
    &[-1, 1, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, -1, 4, -6, 4, -1, 0],
    &[0, 1, -1, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, -1, 4, -6, 4, -1],
    &[0, -1, 1, 0, 0, 1, 7, 0, 0, 0, 0, 0, 0, 0, -1, 4, -6, 4],
    &[0, 0, 1, -1, 0, -1, -21, 0, 0, 0, 0, 0, 0, 0, 0, -1, 4, -6],
];

/// Printed Gram of W.
pub const W_PRINTED: &[&[i64]] = &[
    &[4, 2, -2, -2, -2, 0, 0, 0, -2, 1, -2, -2, -2, -2, 2, -2, 2, 2],
    &[2, 4, -2, 0, -2, -1, -1, -1, -2, -1, 0, 0, 0, -1, 2, 0, 1, 2],
    &[-2, -2, 4, 1, 2, 1, -1, 1, 1, -1, 0, 2, 2, 2, -2, 0, 0, -2],
    &[-2, 0, 1, 4, 2, 1, 0, 1, 1, -1, 0, 2, 2, 0, -1, 1, -2, -2],
    &[-2, -2, 2, 2, 4, 2, 1, 1, 1, -1, 0, 2, 2, 0, -2, 0, -2, -2],
    &[0, -1, 1, 1, 2, 4, 0, 0, 0, 0, 0, 0, 0, -1, -2, -2, -1, 0],
    &[0, -1, -1, 0, 1, 0, 4, 1, 1, 0, 0, 0, -1, -2, 0, 0, 0, -1],
    &[0, -1, 1, 1, 1, 0, 1, 4, 0, 1, -2, 0, 1, -1, 1, -1, 1, -1],
    &[-2, -2, 1, 1, 1, 0, 1, 0, 4, 1, 0, 0, 1, 1, -2, 2, -1, -1],
    &[1, -1, -1, -1, -1, 0, 0, 1, 1, 4, -2, -2, -1, 0, 1, 0, 1, 1],
    &[-2, 0, 0, 0, 0, 0, 0, -2, 0, -2, 4, 1, 0, 1, -1, 1, -1, 0],
    &[-2, 0, 2, 2, 2, 0, 0, 0, 0, -2, 1, 4, 2, 1, -1, 1, -1, -2],
    &[-2, 0, 2, 2, 2, 0, -1, 1, 1, -1, 0, 2, 4, 1, -1, 1, -1, -1],
    &[-2, -1, 2, 0, 0, -1, -2, -1, 1, 0, 1, 1, 1, 4, -1, 2, 0, -1],
    &[2, 2, -2, -1, -2, -2, 0, 1, -2, 1, -1, -1, -1, -1, 4, 0, 2, 1],
    &[-2, 0, 0, 1, 0, -2, 0, -1, 2, 0, 1, 1, 1, 2, 0, 4, -1, -1],
    &[2, 1, 0, -2, -2, -1, 0, 1, -1, 1, -1, -1, -1, 0, 2, -1, 4, 1],
    &[2, 2, -2, -2, -2, 0, -1, -1, -1, 1, 0, -2, -1, -1, 1, -1, 1, 4],
];

/// Printed Gram of S_{11.K3[2]}; one row is short.
pub const S11_PRINTED: &[&[i64]] = &[
    &[-4, 1, -2, -2, -1, 1, -1, 1, -1, -1, 2, 1, -1, 2, -1, -2, -2, 2, 1, -1],
    &[1, -4, -1, -1, -1, -1, -1, 1, -1, 2, -1, -2, 2, 0, -1, 0, 0, -1, -2, 1],
    &[-2, -1, -4, -2, -1, -1, 0, 1, 0, -1, 1, 0, -1, 2, -2, -1, -1, 0, 0, 1],
    &[-2, -1, -2, -4, 0, 0, -2, 0, -1, 0, 2, 1, 0, 1, 0, 0, -1, 1, 0, -1],
    &[-1, -1, -1, 0, -4, 1, -1, 2, -2, -1, 1, 0, -1, 0, -2, -2, 0, 1, 1, -1],
    &[1, -1, -1, 0, 1, -4, 0, -1, 0, 1, -2, -1, 0, -1, -1, 0, -1, 0, -1, 1],
    &[-1, -1, 0, -2, -1, 0, -4, 1, -2, 1, 1, 1, 0, -1, 0, -1, 0, 2, 0, -2],
    &[1, 1, 1, 0, 2, -1, 1, -4, 0, 0, -1, 1, 1, 0, 2, 1, 0, -1, 1, 0],
    &[-1, -1, 0, -1, -2, 0, -2, 0, -4, 0, 0, 1, 1, 0, -1, -2, 0, 2, 0, -2],
    &[-1, 2, -1, 0, -1, 1, 1, 0, 0, -4, 1, 1, -2, 1, 0, 0, 1, 1, 1, 0],
    &[2, -1, 1, 2, 1, -2, 1, -1, 0, 1, -4, -2, 2, -1, 0, 0, 0, -1, -2, 1],
    &[1, -2, 0, 1, 0, -1, 1, 1, 1, 1, -2, -4, 1, 0, -1, 0, -1, -1, -2, 2],
    &[-1, 2, -1, 0, -1, 0, 0, 1, 1, -2, 2, 1, -4, 0, -1, 0, 0, 1, 2, 0],
    &[2, 0, 2, 1, 0, -1, -1, 0, 0, 1, -1, 0, 0, -4, 1, 1, 1, 0, 0, -1],
    &[-1, -1, -2, 0, -2, -1, 0, 2, -1, 0, 0, -1, -1, 1, -4, -2, -1, 1, 0, 0],
    &[-2, 0, -1, 0, -2, 0, -1, 1, -2, 0, 0, 0, 1, -2, -4, -2, 2, 0, -1],
    &[-2, 0, -1, -1, 0, -1, 0, 0, 0, 1, 0, -1, 0, 1, -1, -2, -4, 1, 0, 0],
    &[2, -1, 0, 1, 1, 0, 2, -1, 2, 1, -1, -1, 1, 0, 1, 2, 1, -4, 0, 2],
    &[1, -2, 0, 0, 1, -1, 0, 1, 0, 1, -2, -2, 2, 0, 0, 0, 0, 0, -4, 1],
    &[-1, 1, 1, -1, -1, 1, -2, 0, -2, 0, 1, 2, 0, -1, 0, -1, 0, 2, 1, -4],
];

/// Rank 4 S-lattice of type 2^5 3^10.
pub const M_5C_PRINTED: &[&[i64]] = &[
    &[-4, -1, -1, 1],
    &[-1, -4, 1, -1],
    &[-1, 1, -4, -1],
    &[1, -1, -1, -4],
];

/// Rank 4 S-lattice of type 2^9 3^6.
pub const M_3_PRINTED: &[&[i64]] = &[
    &[-4, 2, -2, 1],
    &[2, -4, 1, -2],
    &[-2, 1, -4, 2],
    &[1, -2, 2, -4],
];

/// T_11, first case.
pub const T11_1_PRINTED: &[&[i64]] = &[
    &[2, 1, 0],
    &[1, 6, 0],
    &[0, 0, 22],
];

/// T_11, second case.
pub const T11_2_PRINTED: &[&[i64]] = &[
    &[6, -2, -2],
    &[-2, 8, -3],
    &[-2, -3, 8],
];

/// Complement form of S_{5.exo} in the Mukai lattice.
pub const F_PRINTED: &[&[i64]] = &[
    &[4, 1, 1, -1],
    &[1, 4, -1, 1],
    &[1, -1, 4, 1],
    &[-1, 1, 1, 4],
];


/// The three forms listed for the complement genus of S_{11.K3[2]} in the Mukai lattice.
pub const S11_COMPLEMENT_PRINTED: [&[&[i64]]; 3] = [
    &[&[4, 2, 1, 0], &[2, 4, 1, 1], &[1, 1, 4, 2], &[0, 1, 2, 4]],
    &[&[2, 1, 1, 0], &[1, 2, 1, 1], &[1, 1, 8, 4], &[0, 1, 4, 8]],
    &[&[2, 0, 1, 0], &[0, 2, 0, 1], &[1, 0, 6, 0], &[0, 1, 0, 6]],
];
