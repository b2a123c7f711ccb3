//! One-off calibration of the pinned constants.
//!
//! Random ensembles are drawn from a seed block disjoint from the checked
//! ensembles. Upper-bound constants are `margin × max observed`, the
//! lifespan factor `κ` is `min observed / margin`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::presets;
use super::{
    coercivity_check, commutator_ensemble, commutator_probe, gronwall_ensemble, lifespan_sweep, refined_ensemble,
    strichartz_experiment, CommutatorKind, EnsembleSetup,
};
use crate::error::{Error, Result};
use crate::io::PinnedConstants;
use crate::models::ModelKind;

pub const CONSTANTS_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationOptions {
    pub seed_offset: u64,
    pub members: usize,
    pub margin: f64,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        CalibrationOptions {
            seed_offset: super::CALIBRATION_OFFSET,
            members: super::ENSEMBLE_SIZE,
            margin: 1.1,
        }
    }
}

/// Raw maxima and minima behind each pinned value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub options: CalibrationOptions,
    pub observed: BTreeMap<String, f64>,
    pub constants: PinnedConstants,
}

pub fn calibrate(opts: &CalibrationOptions) -> Result<CalibrationReport> {
    if !(opts.margin >= 1.0) || opts.members == 0 {
        return Err(Error::param("calibrate", "need margin >= 1 and at least one member"));
    }
    let m = opts.margin;
    let mut observed = BTreeMap::new();

    let mut strichartz = BTreeMap::new();
    for d in [1, 2] {
        let pair = presets::strichartz_pair(d)?;
        let rep = strichartz_experiment(&pair, &presets::STRICHARTZ_MUS, &presets::STRICHARTZ_LAMBDAS, &presets::strichartz_options())?;
        let key = PinnedConstants::strichartz_key(d, &pair.q().to_string(), &pair.r().to_string());
        observed.insert(format!("strichartz.{key}"), rep.max_ratio);
        strichartz.insert(key, m * rep.max_ratio);
    }

    let mut gronwall_c = BTreeMap::new();
    let mut refined = 0.0;
    let seeds: Vec<u64> = (opts.seed_offset..opts.seed_offset + opts.members as u64).collect();
    for model in [ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D] {
        let setup = EnsembleSetup::standard(model);
        let trajs = setup.run_members(opts.seed_offset, opts.members)?;
        let rep = gronwall_ensemble(&trajs, &seeds, 0.0);
        observed.insert(format!("gronwall.{model}"), rep.max_required_c);
        gronwall_c.insert(model.to_string(), m * rep.max_required_c);
        if model == ModelKind::Whitham1D {
            let r = refined_ensemble(&trajs, super::DecompositionParams::DEFAULT_THETA)?;
            let max = r.iter().map(|x| x.ratio).fold(0.0, f64::max);
            observed.insert("refined".into(), max);
            refined = m * max;
        }
    }

    let ensemble = commutator_ensemble(&presets::commutator_grid(), presets::COMMUTATOR_ENSEMBLE, opts.seed_offset)?;
    let rep = commutator_probe(presets::commutator_s(), &presets::PROBE_MUS, &ensemble)?;
    let mut commutator = BTreeMap::new();
    for kind in CommutatorKind::ALL {
        let key = kind.key();
        observed.insert(format!("commutator.{key}"), rep.max_ratio(kind));
        commutator.insert(key.to_string(), m * rep.max_ratio(kind));
    }

    // the pinned C1 = 2, C2 = 1 follow from 1 + √μ|ξ| ≤ 2/T_μ(ξ) and
    // T_μ ≤ 1; the ensemble only confirms them
    let (c1, c2) = (2.0, 1.0);
    for model in [ModelKind::WB1D, ModelKind::WB2D] {
        let cal: Vec<u64> = (opts.seed_offset..opts.seed_offset + presets::COERCIVITY_SEEDS as u64).collect();
        let rep = coercivity_check(model, &presets::coercivity_grid(model), &presets::PROBE_MUS, &presets::COERCIVITY_EPS, &cal, c1, c2)?;
        observed.insert(format!("coercivity.{model}.lower"), rep.max_lower);
        observed.insert(format!("coercivity.{model}.upper"), rep.max_upper);
    }

    let mut lifespan_kappa = BTreeMap::new();
    for model in [ModelKind::Whitham1D, ModelKind::WB1D, ModelKind::WB2D] {
        let rep = lifespan_sweep(&presets::lifespan_config(model))?;
        observed.insert(format!("lifespan.{model}"), rep.min_formula_ratio);
        lifespan_kappa.insert(model.to_string(), rep.min_formula_ratio / m);
    }

    let mut notes = BTreeMap::new();
    notes.insert(
        "method".into(),
        format!(
            "upper constants = {m} x ensemble max, kappa = ensemble min / {m}; random ensembles use seed offsets {}..{}",
            opts.seed_offset,
            opts.seed_offset + opts.members as u64
        ),
    );
    notes.insert("coercivity".into(), "C1 = 2 and C2 = 1 are exact for the symbol T_mu".into());
    let constants = PinnedConstants {
        version: CONSTANTS_VERSION,
        strichartz,
        gronwall_c,
        coercivity_c1: c1,
        coercivity_c2: c2,
        commutator,
        lifespan_kappa,
        refined,
        notes,
    };
    Ok(CalibrationReport {
        options: opts.clone(),
        observed,
        constants,
    })
}
