//! Fixed benchmark inputs shared by the criterion targets.

use sigma_bounds::{generate, GeneratorSpec, Matrix};

pub const SEED: u64 = 20_240_501;

/// `(label, matrix)` pairs covering dense, sparse, complex and graph inputs.
pub fn fixtures() -> Vec<(String, Matrix)> {
    [
        "uniform-nonneg(200,200,1.0)",
        "signed(2000,1500,0.005)",
        "complex(300,200,0.05)",
        "random-bipartite(500,500,0.01)",
        "star(1000)",
    ]
    .iter()
    .map(|s| {
        let spec: GeneratorSpec = s.parse().expect("valid spec");
        (s.to_string(), generate(&spec, SEED).expect("generates"))
    })
    .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_are_nonzero() {
        for (name, a) in super::fixtures() {
            assert!(!a.is_zero(), "{name}");
        }
    }
}
