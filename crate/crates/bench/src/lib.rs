//! Shared inputs for the criterion benchmarks.

use mrb_core::random::{random_element, rng};
use mrb_core::{BaseInstance, MrbContext, MrbElement, Rational};

/// A fresh context, so memoized results do not leak between iterations.
pub fn context(instance: &BaseInstance, kappa: i64) -> MrbContext {
    MrbContext::new(instance.clone(), Rational::from(kappa))
}

/// `count` seeded pairs of elements with words of length at most `max_len`.
pub fn pairs(
    instance: &BaseInstance,
    max_len: usize,
    count: usize,
    seed: u64,
) -> Vec<(MrbElement, MrbElement)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            (
                random_element(&mut r, instance, max_len, 2),
                random_element(&mut r, instance, max_len, 2),
            )
        })
        .collect()
}
