//! Spectrum dump: predicted vs computed eigenvalue table as CSV.

use crate::config::RunConfig;
use anyhow::{Context, Result};
use qonsager_core::reps::numeric::{build_w_pair, predicted_spectrum, spectrum};
use qonsager_core::reps::QMode;
use std::fmt::Write as _;
use std::path::PathBuf;

pub fn cmd_spectrum(cfg: &RunConfig, operator: usize, out: Option<PathBuf>) -> Result<()> {
    let mode = match cfg.root {
        Some(n) => QMode::RootOfUnity(n),
        None => cfg.generic_mode(),
    };
    let p = cfg.chain_params(cfg.sites, mode);
    let pair = build_w_pair(&p);
    let w = if operator == 0 { &pair.0 } else { &pair.1 };
    let pred = predicted_spectrum(&p, operator);
    let (spec, rep) = spectrum(w, &pred);
    anyhow::ensure!(
        rep.projector_defect < 1e-6 && rep.multiplicity_ok,
        "spectrum verification failed: projector defect {}, multiplicity ok: {}",
        rep.projector_defect,
        rep.multiplicity_ok
    );
    let mut csv = String::from(
        "label,eigenvalue_re,eigenvalue_im,multiplicity,predicted_re,predicted_im,abs_error\n",
    );
    for (n, ((en, th), mult)) in spec
        .projectors
        .iter()
        .zip(&spec.values)
        .zip(&spec.multiplicities)
        .enumerate()
    {
        // measured eigenvalue: the mean of W on the projector's range
        let measured = (w * en).trace() / en.trace();
        let err = (measured - th).norm();
        let _ = writeln!(
            csv,
            "{n},{:.16e},{:.16e},{mult},{:.16e},{:.16e},{:.3e}",
            measured.re, measured.im, th.re, th.im, err
        );
    }
    match out {
        Some(path) => {
            std::fs::write(&path, csv).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(())
}
