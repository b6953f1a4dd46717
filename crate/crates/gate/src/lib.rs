//! Test-only crate holding the acceptance gate in `tests/acceptance.rs`.
