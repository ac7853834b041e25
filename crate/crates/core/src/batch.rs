//! Checking many independent programs. Each program gets its own session,
//! so programs can be checked on a thread pool when the `parallel` feature
//! is enabled.

use crate::driver::{check_source, CheckOutcome, Mode};

/// Checks `(file name, source)` pairs one after the other.
pub fn check_sources_seq(inputs: &[(String, String)], mode: Mode) -> Vec<CheckOutcome> {
    inputs
        .iter()
        .map(|(file, src)| check_source(src, file, mode))
        .collect()
}

/// Checks `(file name, source)` pairs on the rayon pool. Results keep input order.
#[cfg(feature = "parallel")]
pub fn check_sources_par(inputs: &[(String, String)], mode: Mode) -> Vec<CheckOutcome> {
    use rayon::prelude::*;
    inputs
        .par_iter()
        .map(|(file, src)| check_source(src, file, mode))
        .collect()
}

/// Parallel when built with `parallel`, sequential otherwise.
pub fn check_sources(inputs: &[(String, String)], mode: Mode) -> Vec<CheckOutcome> {
    #[cfg(feature = "parallel")]
    {
        check_sources_par(inputs, mode)
    }
    #[cfg(not(feature = "parallel"))]
    {
        check_sources_seq(inputs, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_matches_sequential() {
        let inputs: Vec<(String, String)> = (0..20)
            .map(|i| {
                let src = if i % 3 == 0 {
                    format!("let x{i} = {i} + true")
                } else {
                    format!("let x{i} = {i}")
                };
                (format!("f{i}.src"), src)
            })
            .collect();
        let a: Vec<i32> = check_sources_seq(&inputs, Mode::Easy)
            .iter()
            .map(CheckOutcome::exit_code)
            .collect();
        let b: Vec<i32> = check_sources(&inputs, Mode::Easy)
            .iter()
            .map(CheckOutcome::exit_code)
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.iter().filter(|&&c| c == 1).count(), 7);
    }
}
