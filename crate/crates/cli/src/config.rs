//! Run configuration: defaults, optional JSON file, explicit flags.
//! Flags win over file values, file values win over defaults.

use anyhow::{Context, Result};
use num_rational::BigRational;
use qonsager_core::reps::{ChainParams, QMode, GENERIC_ANGLE};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Deserialize, Default)]
pub struct FileConfig {
    pub rmax: Option<u32>,
    pub sites: Option<usize>,
    pub root: Option<u32>,
    pub symbolic: Option<bool>,
    pub kplus: Option<String>,
    pub kminus: Option<String>,
    pub epsplus: Option<String>,
    pub epsminus: Option<String>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub rmax: u32,
    pub sites: usize,
    pub root: Option<u32>,
    pub symbolic: bool,
    pub kplus: BigRational,
    pub kminus: BigRational,
    pub epsplus: BigRational,
    pub epsminus: BigRational,
    pub tol: Option<f64>,
    pub seed: u64,
}

fn parse_rat(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .with_context(|| format!("cannot parse rational {s:?} (expected \"num/den\")"))
}

impl RunConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        file: Option<PathBuf>,
        rmax: Option<u32>,
        sites: Option<usize>,
        root: Option<u32>,
        symbolic: Option<bool>,
        kplus: Option<String>,
        kminus: Option<String>,
        epsplus: Option<String>,
        epsminus: Option<String>,
        tol: Option<f64>,
        seed: Option<u64>,
    ) -> Result<Self> {
        let fc: FileConfig = match file {
            Some(p) => {
                let body = std::fs::read_to_string(&p)
                    .with_context(|| format!("cannot read config {}", p.display()))?;
                serde_json::from_str(&body)
                    .with_context(|| format!("invalid config {}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let rmax = rmax.or(fc.rmax).unwrap_or(6);
        anyhow::ensure!((1..=12).contains(&rmax), "rmax must be in 1..=12");
        let sites = sites.or(fc.sites).unwrap_or(6);
        anyhow::ensure!((1..=10).contains(&sites), "L must be in 1..=10");
        let root = root.or(fc.root);
        if let Some(n) = root {
            anyhow::ensure!((2..=12).contains(&n), "N must be in 2..=12");
        }
        let rat = |flag: Option<String>, from_file: &Option<String>, dflt: (i64, i64)| {
            match flag.or_else(|| from_file.clone()) {
                Some(s) => parse_rat(&s),
                None => Ok(BigRational::new(dflt.0.into(), dflt.1.into())),
            }
        };
        Ok(RunConfig {
            rmax,
            sites,
            root,
            symbolic: symbolic.or(fc.symbolic).unwrap_or(false),
            kplus: rat(kplus, &fc.kplus, (7, 10))?,
            kminus: rat(kminus, &fc.kminus, (31, 100))?,
            epsplus: rat(epsplus, &fc.epsplus, (83, 100))?,
            epsminus: rat(epsminus, &fc.epsminus, (57, 100))?,
            tol: tol.or(fc.tol),
            seed: seed.or(fc.seed).unwrap_or(20130),
        })
    }

    pub fn chain_params(&self, sites: usize, q_mode: QMode) -> ChainParams {
        ChainParams::new(
            sites,
            self.kplus.clone(),
            self.kminus.clone(),
            self.epsplus.clone(),
            self.epsminus.clone(),
            q_mode,
        )
    }

    pub fn generic_mode(&self) -> QMode {
        QMode::Generic { angle: GENERIC_ANGLE }
    }

    pub fn tol_or(&self, dflt: f64) -> f64 {
        self.tol.unwrap_or(dflt)
    }
}
