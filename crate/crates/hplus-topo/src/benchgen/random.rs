//! Random tasks for fuzzing the analyses against the oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{built, require};
use crate::error::GenError;
use crate::task::{Task, TaskBuilder};

/// Largest accepted variable count (keeps state spaces enumerable).
pub const RANDOM_MAX_VARS: usize = 8;
/// Largest accepted domain size.
pub const RANDOM_MAX_DOMAIN: usize = 6;
/// Largest accepted operator count.
pub const RANDOM_MAX_OPS: usize = 40;

/// A random task with `vars` variables of `domain_size` values and `ops`
/// operators. Each operator has a precondition on every variable with
/// probability 0.4 and an effect on at least one variable (each further
/// variable with probability 0.3), never equal to its precondition value.
/// Every variable has a goal with probability 0.5. The task may be
/// unsolvable.
pub fn random_task(vars: usize, domain_size: usize, ops: usize, seed: u64) -> Result<Task, GenError> {
    require((1..=RANDOM_MAX_VARS).contains(&vars), || {
        format!("vars must be in 1..={RANDOM_MAX_VARS}")
    })?;
    require((2..=RANDOM_MAX_DOMAIN).contains(&domain_size), || {
        format!("domain_size must be in 2..={RANDOM_MAX_DOMAIN}")
    })?;
    require(ops <= RANDOM_MAX_OPS, || format!("ops must be at most {RANDOM_MAX_OPS}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = |v: usize| format!("v{v}");
    let val = |d: usize| format!("{d}");
    let mut b = TaskBuilder::new();
    for v in 0..vars {
        b.var(name(v), (0..domain_size).map(val));
        b.init(name(v), val(rng.random_range(0..domain_size)));
    }
    for v in 0..vars {
        if rng.random_bool(0.5) {
            b.goal(name(v), val(rng.random_range(0..domain_size)));
        }
    }
    for o in 0..ops {
        let mut pre = Vec::new();
        let mut eff = Vec::new();
        let forced = rng.random_range(0..vars);
        for v in 0..vars {
            let p = rng.random_bool(0.4).then(|| rng.random_range(0..domain_size));
            if let Some(d) = p {
                pre.push((name(v), val(d)));
            }
            if v == forced || rng.random_bool(0.3) {
                let mut d = rng.random_range(0..domain_size - usize::from(p.is_some()));
                if p.is_some_and(|p| d >= p) {
                    d += 1;
                }
                eff.push((name(v), val(d)));
            }
        }
        b.op_with(format!("o{o}"), pre, eff);
    }
    built(&b)
}
