//! Bundled example inputs, addressable on the command line as `builtin:NAME`.

/// `(name, document)` pairs.
pub const BUILTIN: &[(&str, &str)] = &[
    ("point", include_str!("../data/point.toml")),
    ("two-chain", include_str!("../data/two-chain.toml")),
    ("pseudocircle", include_str!("../data/pseudocircle.toml")),
    ("sphere", include_str!("../data/sphere.toml")),
    ("torus", include_str!("../data/torus.toml")),
    ("filtered-two-step", include_str!("../data/filtered-two-step.toml")),
    ("multidifferential", include_str!("../data/multidifferential.toml")),
];

/// Monotone map files for the bundled examples.
pub const MAPS: &[(&str, &str)] = &[("pseudocircle-collapse", include_str!("../data/pseudocircle-collapse.toml"))];

pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTIN.iter().chain(MAPS).find(|(n, _)| *n == name).map(|(_, d)| *d)
}

pub fn names() -> Vec<&'static str> {
    BUILTIN.iter().chain(MAPS).map(|(n, _)| *n).collect()
}
