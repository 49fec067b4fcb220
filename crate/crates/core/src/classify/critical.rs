//! Chi-square critical values, shipped as a diagnostic aid.
//!
//! Classification itself never consults this table: a document is always
//! assigned to the cluster minimizing the chi-square distance. The table
//! only answers the side question "is this distance larger than chance
//! would allow?"; the degrees of freedom are taken as vector dimension
//! minus one.

/// Significance levels the table covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignificanceLevel {
    P05,
    P01,
    P001,
}

/// Standard upper critical values of the chi-square distribution, as
/// (df, p = 0.05, p = 0.01, p = 0.001).
const CRITICAL_VALUES: [(usize, f64, f64, f64); 38] = [
    (1, 3.841, 6.635, 10.828),
    (2, 5.991, 9.210, 13.816),
    (3, 7.815, 11.345, 16.266),
    (4, 9.488, 13.277, 18.467),
    (5, 11.070, 15.086, 20.515),
    (6, 12.592, 16.812, 22.458),
    (7, 14.067, 18.475, 24.322),
    (8, 15.507, 20.090, 26.124),
    (9, 16.919, 21.666, 27.877),
    (10, 18.307, 23.209, 29.588),
    (11, 19.675, 24.725, 31.264),
    (12, 21.026, 26.217, 32.909),
    (13, 22.362, 27.688, 34.528),
    (14, 23.685, 29.141, 36.123),
    (15, 24.996, 30.578, 37.697),
    (16, 26.296, 32.000, 39.252),
    (17, 27.587, 33.409, 40.790),
    (18, 28.869, 34.805, 42.312),
    (19, 30.144, 36.191, 43.820),
    (20, 31.410, 37.566, 45.315),
    (21, 32.671, 38.932, 46.797),
    (22, 33.924, 40.289, 48.268),
    (23, 35.172, 41.638, 49.728),
    (24, 36.415, 42.980, 51.179),
    (25, 37.652, 44.314, 52.620),
    (26, 38.885, 45.642, 54.052),
    (27, 40.113, 46.963, 55.476),
    (28, 41.337, 48.278, 56.892),
    (29, 42.557, 49.588, 58.301),
    (30, 43.773, 50.892, 59.703),
    (40, 55.758, 63.691, 73.402),
    (50, 67.505, 76.154, 86.661),
    (60, 79.082, 88.379, 99.607),
    (70, 90.531, 100.425, 112.317),
    (75, 96.217, 106.393, 118.599),
    (80, 101.879, 112.329, 124.839),
    (90, 113.145, 124.116, 137.208),
    (100, 124.342, 135.807, 149.449),
];

/// Critical value for `df` degrees of freedom, if tabulated.
pub fn chi_square_critical_value(df: usize, level: SignificanceLevel) -> Option<f64> {
    CRITICAL_VALUES
        .iter()
        .find(|row| row.0 == df)
        .map(|row| match level {
            SignificanceLevel::P05 => row.1,
            SignificanceLevel::P01 => row.2,
            SignificanceLevel::P001 => row.3,
        })
}

/// Whether a chi-square score for a `dimension`-component vector exceeds
/// the 0.05 critical value at df = dimension - 1. `None` when the df is
/// outside the table.
pub fn chi_square_exceeds_critical(score: f64, dimension: usize) -> Option<bool> {
    let df = dimension.checked_sub(1)?;
    chi_square_critical_value(df, SignificanceLevel::P05).map(|critical| score > critical)
}
