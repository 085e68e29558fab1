use std::path::PathBuf;
use std::sync::Arc;

use muord::padic::{PrecisionContext, MAX_DEGREE};
use muord::shimura::{DatumFile, PelDatum};
use muord::suites::{self, SuiteConfig};
use muord::theta::{
    kummer_check_weights, moment, parameter_embeddings, CoordinateAssignment, ThetaOperator,
};
use muord::weights::{
    char_congruent, classify, decomposition_dimension, dim_irrep, is_multiplicity_free,
    restrict_to_blocks, restrict_to_levi, simple_violations, theta_hypotheses, DominantWeight,
    LeviWeight,
};
use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use thiserror::Error;

use crate::input::*;
use crate::output::*;
use crate::{Command, Format};

/// Upper bounds on the problem size. Given explicitly, they are also
/// enforced on input files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_e: Option<usize>,
    pub max_n: Option<u32>,
    pub degree: Option<u32>,
    pub precision: Option<u32>,
}

const MAX_SUITE_E: usize = 6;
const MAX_SUITE_N: u32 = 6;
const MAX_SUITE_PRECISION: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub limits: Limits,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] muord::Error),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Limit(_) => 1,
        }
    }

    pub fn precondition(&self) -> Option<&'static str> {
        match self {
            CliError::Domain(e) => e.precondition(),
            _ => None,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn execute(cfg: &RunConfig) -> Result<Output> {
    if let Command::Proptest { only } = cfg.command {
        return proptest(cfg, only);
    }
    let text = read_input(cfg.input.as_ref())?;
    let lim = &cfg.limits;
    Ok(match cfg.command {
        Command::Newton => newton(&lim.datum(parse(&text)?)?),
        Command::Dual => dual(&lim.datum(parse(&text)?)?),
        Command::Levi => levi(&lim.datum(parse(&text)?)?)?,
        Command::Hasse => hasse(&lim.datum(parse(&text)?)?),
        Command::Grranks => grranks(&lim.datum(parse(&text)?)?),
        Command::Cascade => cascade(&lim.datum(parse(&text)?)?)?,
        Command::Params => params(&lim.datum(parse(&text)?)?),
        Command::Restrict => restrict(lim, parse(&text)?)?,
        Command::Classify => {
            let input: ClassifyInput = parse(&text)?;
            let d = lim.datum(input.datum)?;
            let kappa = DominantWeight::from_labels(&d, &input.kappa)?;
            Output::Classify(ClassifyReport {
                classes: classify(&kappa, &d)?,
                multiplicity_free: is_multiplicity_free(&kappa, &d)?,
            })
        }
        Command::Simple => {
            let input: SimpleInput = parse(&text)?;
            let d = lim.datum(input.datum)?;
            let lambda = LeviWeight::from_labels(&d, &input.lambda)?;
            let violations = simple_violations(&lambda, &d, input.reading)?;
            Output::Simple(SimpleReport { reading: input.reading, simple: violations.is_empty(), violations })
        }
        Command::Charcong => {
            let input: CharCongInput = parse(&text)?;
            let congruent = char_congruent(&input.kappa, &input.kappa_prime, input.m, input.p)?;
            let modulus = input.p.checked_pow(input.m).unwrap_or(u64::MAX);
            Output::Charcong(CharCongReport { modulus, congruent })
        }
        Command::Theta => {
            let input: ThetaInput = parse(&text)?;
            let d = lim.datum(input.datum)?;
            let ctx = lim.context(input.series.ctx(), &d)?;
            let a = CoordinateAssignment::from_records(ctx, &input.assignment, &d, input.reading)?;
            let lambda = LeviWeight::from_labels(&d, &input.lambda)?;
            Output::Theta(ThetaOperator::from_weight(&a, &lambda, &d)?.apply(&input.series)?)
        }
        Command::Thetacong => thetacong(lim, parse(&text)?)?,
        Command::Moments => {
            let input: MomentsInput = parse(&text)?;
            let d = lim.datum(input.datum)?;
            let ctx = lim.context(input.measure.ctx(), &d)?;
            let a = CoordinateAssignment::from_records(ctx, &input.assignment, &d, input.reading)?;
            let rows = input
                .weights
                .into_iter()
                .map(|w| {
                    let lambda = LeviWeight::from_labels(&d, &w)?;
                    Ok(MomentRow { moment: moment(&input.measure, &lambda, &a, &d)?, weight: w })
                })
                .collect::<Result<Vec<_>>>()?;
            Output::Moments(rows)
        }
        Command::Kummer => {
            let input: KummerInput = parse(&text)?;
            let d = lim.datum(input.datum)?;
            let ctx = lim.context(input.measure.ctx(), &d)?;
            let a = CoordinateAssignment::from_records(ctx, &input.assignment, &d, input.reading)?;
            let terms = input
                .terms
                .iter()
                .map(|t| Ok((t.coeff, LeviWeight::from_labels(&d, &t.weight)?)))
                .collect::<Result<Vec<_>>>()?;
            let outcome = kummer_check_weights(&input.measure, &terms, input.m, &a, &d)?;
            Output::Kummer(KummerReport { m: input.m, outcome })
        }
        Command::Proptest { .. } => unreachable!("handled above"),
    })
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    let path = path.ok_or_else(|| CliError::Parse("this subcommand needs --input".into()))?;
    let read = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Parses JSON, reporting the line, column and field of the first error.
pub(crate) fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse(format!("parse error in field `{path}`: {inner}"))
    })?;
    de.end().map_err(|e| CliError::Parse(format!("parse error: {e}")))?;
    Ok(value)
}

impl Limits {
    fn datum(&self, file: DatumFile) -> Result<PelDatum> {
        let d = PelDatum::try_from(file)?;
        for entry in d.entries() {
            if let Some(max) = self.max_e.filter(|&m| entry.orbit.e() > m) {
                return Err(CliError::Limit(format!(
                    "orbit {} has e = {} above --max-e {max}",
                    entry.name,
                    entry.orbit.e()
                )));
            }
        }
        if let Some(max) = self.max_n.filter(|&m| d.n() > m) {
            return Err(CliError::Limit(format!("rank n = {} is above --max-n {max}", d.n())));
        }
        Ok(d)
    }

    fn context(&self, ctx: &PrecisionContext, d: &PelDatum) -> Result<Arc<PrecisionContext>> {
        if ctx.prime() != d.p() {
            return Err(muord::Error::InvalidDatum(format!(
                "expansion is over p = {} but the datum has p = {}",
                ctx.prime(),
                d.p()
            ))
            .into());
        }
        if let Some(max) = self.degree.filter(|&m| ctx.degree() > m) {
            return Err(CliError::Limit(format!("degree bound {} is above --degree {max}", ctx.degree())));
        }
        if let Some(max) = self.precision.filter(|&m| ctx.precision() > m) {
            return Err(CliError::Limit(format!(
                "precision {} is above --precision {max}",
                ctx.precision()
            )));
        }
        Ok(Arc::new(ctx.clone()))
    }
}

fn newton(d: &PelDatum) -> Output {
    Output::Newton(
        d.entries()
            .iter()
            .map(|e| OrbitPolygon {
                orbit: e.name.clone(),
                e: e.orbit.e(),
                n: e.orbit.n(),
                f: e.orbit.mult_type().to_vec(),
                polygon: e.orbit.newton_slopes(),
            })
            .collect(),
    )
}

fn dual(d: &PelDatum) -> Output {
    Output::Dual(
        d.entries()
            .iter()
            .map(|e| {
                let polygon = e.orbit.newton_slopes();
                let dual = e.orbit.dual().newton_slopes();
                let reflected = polygon.reflected(e.orbit.e() as u32);
                DualCheck { orbit: e.name.clone(), agrees: dual == reflected, polygon, dual, reflected }
            })
            .collect(),
    )
}

fn levi(d: &PelDatum) -> Result<Output> {
    let rows = d
        .embeddings()
        .iter()
        .enumerate()
        .map(|(idx, emb)| {
            Ok(LeviRow {
                embedding: d.label(idx),
                signature: d.signature(idx),
                blocks: d.levi_blocks(idx)?,
                slope_indices: d.orbit(emb.orbit).block_slope_indices(emb.position),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Output::Levi(rows))
}

fn hasse(d: &PelDatum) -> Output {
    Output::Hasse(HasseReport {
        p: d.p(),
        orbit_lengths: d.entries().iter().map(|e| e.orbit.e()).collect(),
        weight: d.hasse_weight(),
    })
}

fn grranks(d: &PelDatum) -> Output {
    Output::Grranks(
        d.entries()
            .iter()
            .map(|e| {
                let table = e.orbit.gr_ranks();
                OrbitGrRanks {
                    orbit: e.name.clone(),
                    lower_sum: table.lower_sum(),
                    ranks: table.entries,
                    parameter_count: e.orbit.moonen_parameter_count(),
                }
            })
            .collect(),
    )
}

fn cascade(d: &PelDatum) -> Result<Output> {
    let rows = d
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| Ok(OrbitCascade { orbit: e.name.clone(), pieces: e.orbit.cascade(i)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Output::Cascade(rows))
}

fn params(d: &PelDatum) -> Output {
    let counts: std::collections::BTreeMap<String, u64> =
        d.entries().iter().map(|e| (e.name.clone(), e.orbit.moonen_parameter_count())).collect();
    Output::Params(ParamsReport {
        total: counts.values().sum(),
        counts,
        parameter_embeddings: parameter_embeddings(d).into_iter().map(|i| d.label(i)).collect(),
    })
}

fn restrict(lim: &Limits, input: RestrictInput) -> Result<Output> {
    match input {
        RestrictInput { datum: None, kappa: None, weight: Some(weight), blocks: Some(blocks) } => {
            if let Some(max) = lim.max_n.filter(|&m| weight.len() > m as usize) {
                return Err(CliError::Limit(format!("rank {} is above --max-n {max}", weight.len())));
            }
            let dec = restrict_to_blocks(&weight, &blocks)?;
            let rows = dec
                .iter()
                .map(|(parts, &multiplicity)| {
                    let dimension =
                        parts.iter().map(|w| dim_irrep(w)).product::<muord::Result<BigUint>>()?;
                    Ok(BlockRow { parts: parts.clone(), multiplicity, dimension })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Output::Restrict(BlockRestriction {
                dimension: dim_irrep(&weight)?,
                total: decomposition_dimension(&dec),
                weight,
                blocks,
                rows,
            }))
        }
        RestrictInput { datum: Some(file), kappa: Some(kappa), weight: None, blocks: None } => {
            let d = lim.datum(file)?;
            let kappa = DominantWeight::from_labels(&d, &kappa)?;
            let dec = restrict_to_levi(&kappa, &d)?;
            let dimension = kappa.entries().iter().map(|w| dim_irrep(w)).product::<muord::Result<BigUint>>()?;
            let components = dec
                .components
                .iter()
                .map(|(w, &multiplicity)| LeviRowWeight {
                    weight: w.to_labels(&d),
                    multiplicity,
                    dimension: w.dimension(),
                })
                .collect();
            Ok(Output::RestrictLevi(LeviRestriction {
                dimension,
                total: dec.total_dimension(),
                multiplicity_free: dec.components.values().all(|&m| m == 1),
                components,
            }))
        }
        _ => Err(CliError::Parse(
            "restrict takes either `weight` with `blocks`, or `datum` with `kappa`".into(),
        )),
    }
}

fn thetacong(lim: &Limits, input: ThetaCongInput) -> Result<Output> {
    let d = lim.datum(input.datum)?;
    let ctx = lim.context(input.series.ctx(), &d)?;
    let a = CoordinateAssignment::from_records(ctx, &input.assignment, &d, input.reading)?;
    let lambda = LeviWeight::from_labels(&d, &input.lambda)?;
    let lambda_prime = LeviWeight::from_labels(&d, &input.lambda_prime)?;
    let hypotheses = theta_hypotheses(&lambda, &lambda_prime, input.m, &d, input.reading)?;
    if !hypotheses.holds {
        return Ok(Output::Thetacong(ThetaCongReport {
            reading: input.reading,
            hypotheses,
            congruent: None,
            theta: None,
            theta_prime: None,
        }));
    }
    let available = input.series.ctx().precision();
    if input.m + 1 > available {
        return Err(muord::Error::InsufficientPrecision { requested: input.m + 1, available }.into());
    }
    let theta = ThetaOperator::from_weight(&a, &lambda, &d)?.apply(&input.series)?;
    let theta_prime = ThetaOperator::from_weight(&a, &lambda_prime, &d)?.apply(&input.series)?;
    Ok(Output::Thetacong(ThetaCongReport {
        reading: input.reading,
        hypotheses,
        congruent: Some(theta.congruent(&theta_prime, input.m + 1)?),
        theta: Some(theta),
        theta_prime: Some(theta_prime),
    }))
}

fn proptest(cfg: &RunConfig, only: Option<usize>) -> Result<Output> {
    let lim = &cfg.limits;
    let mut suite = SuiteConfig { seed: cfg.seed, ..SuiteConfig::default() };
    if let Some(e) = lim.max_e {
        suite.max_e = bounded("--max-e", e, 1, MAX_SUITE_E)?;
    }
    if let Some(n) = lim.max_n {
        suite.max_n = bounded("--max-n", n, 1, MAX_SUITE_N)?;
    }
    if let Some(deg) = lim.degree {
        suite.degree = bounded("--degree", deg, 1, MAX_DEGREE)?;
    }
    if let Some(m) = lim.precision {
        suite.precision = bounded("--precision", m, 1, MAX_SUITE_PRECISION)?;
    }
    let suites = match only {
        Some(n) => vec![suites::run(n, &suite).ok_or_else(|| {
            CliError::Limit(format!("--only takes a suite number from 1 to {}", suites::NAMES.len()))
        })?],
        None => suites::run_all(&suite),
    };
    Ok(Output::Proptest(ProptestReport {
        seed: cfg.seed,
        passed: suites.iter().all(|r| r.passed()),
        suites,
    }))
}

fn bounded<T: PartialOrd + std::fmt::Display>(flag: &str, v: T, lo: T, hi: T) -> Result<T> {
    if v < lo || v > hi {
        return Err(CliError::Limit(format!("{flag} {v} is outside {lo}..={hi}")));
    }
    Ok(v)
}

