//! Multi-threaded stratum enumeration.

use rayon::prelude::*;
use relsmooth_core::conditions::TangencyData;
use relsmooth_core::strata::{degree_partitions, enumerate_partition, merge, EnumerateOptions, StrataError, Stratum};
use relsmooth_core::StackyTarget;

/// Same output as [`relsmooth_core::strata::enumerate`], with the degree
/// partitions spread over `jobs` threads (`0` picks the number of CPUs).
pub fn enumerate(
    gamma: &TangencyData,
    target: &StackyTarget,
    degree: u32,
    opts: &EnumerateOptions,
    jobs: usize,
) -> Result<Vec<Stratum>, StrataError> {
    if degree == 0 {
        return Err(StrataError::ZeroDegree);
    }
    let partitions = degree_partitions(degree);
    let run = || {
        partitions
            .par_iter()
            .map(|p| enumerate_partition(gamma, target, p, opts))
            .collect::<Result<Vec<_>, _>>()
    };
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run)?,
        Err(_) => run()?,
    };
    Ok(merge(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use relsmooth_core::conditions::FiberTangency;

    #[test]
    fn matches_sequential() {
        let target = StackyTarget::projective_line().with_relative_point("inf");
        let gamma = TangencyData::new(1, vec![FiberTangency::new("inf", &[2, 1])]);
        let opts = EnumerateOptions::default();
        let seq = relsmooth_core::strata::enumerate(&gamma, &target, 3, &opts).unwrap();
        for jobs in [1, 2, 4] {
            assert_eq!(enumerate(&gamma, &target, 3, &opts, jobs).unwrap(), seq);
        }
    }

    #[test]
    fn zero_degree_is_an_error() {
        let target = StackyTarget::projective_line();
        let err = enumerate(&TangencyData::default(), &target, 0, &EnumerateOptions::default(), 2);
        assert_eq!(err, Err(StrataError::ZeroDegree));
    }
}
