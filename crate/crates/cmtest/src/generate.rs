//! Parallel field generation. Every pixel is a pure function of its indices
//! and the spec, so the output is bit-identical for any thread count.

use cmtest_core::noise::NoisePlan;
use cmtest_core::{ScalarField, TestSpec};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Generates `spec` on the current rayon pool.
pub fn generate(spec: &TestSpec) -> Result<ScalarField> {
    let (w, h) = (spec.width, spec.height);
    cmtest_core::field::check_dimensions(w, h)?;
    let surface = spec.surface()?;
    let domain = surface.domain();
    domain.validate()?;

    let mut values = vec![0.0; w * h];
    values.par_chunks_mut(w).enumerate().for_each(|(j, row)| {
        for (i, v) in row.iter_mut().enumerate() {
            let (x, y) = domain.pixel_center(i, j, w, h);
            *v = surface.eval(x, y);
        }
    });
    let mut field = ScalarField::new(w, h, values, domain)?;

    if let Some((lo, hi)) = spec.rescale()? {
        field.rescale(lo, hi);
    }
    if let Some(opts) = spec.noise_options()? {
        let plan = NoisePlan::new(w, h, spec.noise_range(&field)?, opts)?;
        field.values_mut().par_iter_mut().enumerate().for_each(|(k, v)| *v = plan.apply_at(k, *v));
    }
    Ok(field)
}

/// Generates `spec` on a dedicated pool with `threads` workers.
pub fn generate_with_threads(spec: &TestSpec, threads: usize) -> Result<ScalarField> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot build a {threads}-thread pool: {e}")))?;
    pool.install(|| generate(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmtest_core::FunctionId;

    #[test]
    fn matches_sequential_generation() {
        for f in FunctionId::all() {
            let spec = TestSpec::new(f, 37, 23)
                .with_seed(9)
                .with_param("noise", "max_scaled")
                .and_then(|s| s.with_param("noise_proportion", "0.3"))
                .unwrap();
            assert_eq!(generate(&spec).unwrap(), spec.generate().unwrap(), "{}", f.name());
        }
    }

    #[test]
    fn thread_count_does_not_matter() {
        let spec = TestSpec::new(FunctionId::Gradient, 64, 64)
            .with_param("noise", "range_scaled")
            .and_then(|s| s.with_param("noise_source", "perlin"))
            .unwrap();
        let one = generate_with_threads(&spec, 1).unwrap();
        let many = generate_with_threads(&spec, 8).unwrap();
        assert_eq!(one, many);
    }
}
