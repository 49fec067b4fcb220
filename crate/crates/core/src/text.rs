//! Small text utilities shared across the crate: Unicode normalization,
//! deterministic number formatting, and the schema fingerprint hash.

use icu_normalizer::ComposingNormalizer;

/// NFC-normalize a string.
///
/// Every token surface, lexicon entry and schema symbol passes through here
/// before any comparison; Bengali text commonly mixes byte-level encodings
/// of identical graphemes.
pub fn nfc(s: &str) -> String {
    ComposingNormalizer::new_nfc().normalize(s).into_owned()
}

/// Format `value` with `digits` significant digits in plain decimal notation.
///
/// The output is stable under a write -> parse -> write round trip, which is
/// what keeps model files byte-identical across rewrites.
pub fn format_significant(value: f64, digits: i32) -> String {
    if value == 0.0 || !value.is_finite() {
        return "0".to_string();
    }
    let decimals = decimals_for(value, digits);
    let formatted = format!("{value:.decimals$}");
    // Rounding can carry into the next magnitude (99.99.. -> 100.0..),
    // which changes how many decimals the target digit count needs.
    let rounded: f64 = formatted.parse().expect("fixed-point format is parseable");
    let adjusted = decimals_for(rounded, digits);
    if adjusted == decimals {
        formatted
    } else {
        format!("{rounded:.adjusted$}")
    }
}

fn decimals_for(value: f64, digits: i32) -> usize {
    let magnitude = value.abs().log10().floor() as i32;
    (digits - 1 - magnitude).clamp(0, 17) as usize
}

/// 64-bit FNV-1a over raw bytes; used to fingerprint schema files.
pub fn fnv1a_64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
