//! Fixtures shared by the diagnostics benchmarks.

use eiko_core::fields::{generate, Generator};
use eiko_core::{GridField2, GridSpec, TestBump, Vec2};

/// Half-shifted `n × n` vortex on `[-1, 1]²`.
pub fn vortex(n: usize) -> GridField2 {
    let spec = GridSpec::centered(n, n, 2.0 / (n - 1) as f64, Vec2::ZERO)
        .unwrap()
        .half_shifted();
    generate(&Generator::vortex(Vec2::ZERO, 1.0), spec).unwrap()
}

/// Test function away from the vortex core.
pub fn off_core_bump() -> TestBump {
    TestBump::new(Vec2::new(0.5, 0.3), 0.25)
}
