//! Configuration, subcommand dispatch and report emission for the
//! `shiftdyn` binary.

pub mod config;
pub mod emit;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::criteria::{
    check_chaos_equiv, check_disjoint, check_f_transitivity, check_fhc, check_star_condition, lower_density,
    Cell, CriterionVerdict, EvidenceTable, Holds,
};
use crate::dynamics::products::forward_product_norm_dense;
use crate::dynamics::{
    family_constant, family_custom, family_example_3_11, family_example_3_2, family_example_3_6,
    family_example_3_6_alternate, forward_product_norm, rational_closed_form, ApproximantFamily, DisjointFamily,
    GeneralizedShift,
};
use crate::error::{Error, Result};
use crate::module::{make_fjm_vector, module_norm, Fill, FjmSpec, ModuleVector};
use crate::operator::{BasisShiftOp, Coeff, FiniteOp, IndexWindow};
use crate::witness::{disjoint_witness, periodic_extension, periodicity_residual, return_set_scan};

pub use config::{FamilyName, Format, RunConfig, UnitaryChoice, ENV_PREFIX};
pub use emit::{from_kv, to_csv, to_kv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subcommand {
    Norms,
    Fhc,
    Chaos,
    Disjoint,
    Star,
    Ftrans,
    Witness,
    Scan,
    Periodic,
}

impl Subcommand {
    pub const ALL: [Subcommand; 9] = [
        Subcommand::Norms,
        Subcommand::Fhc,
        Subcommand::Chaos,
        Subcommand::Disjoint,
        Subcommand::Star,
        Subcommand::Ftrans,
        Subcommand::Witness,
        Subcommand::Scan,
        Subcommand::Periodic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Norms => "norms",
            Subcommand::Fhc => "fhc",
            Subcommand::Chaos => "chaos",
            Subcommand::Disjoint => "disjoint",
            Subcommand::Star => "star",
            Subcommand::Ftrans => "ftrans",
            Subcommand::Witness => "witness",
            Subcommand::Scan => "scan",
            Subcommand::Periodic => "periodic",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown subcommand {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub subcommand: Subcommand,
    pub config: RunConfig,
    pub verdicts: Vec<CriterionVerdict>,
}

impl RunReport {
    pub fn tables(&self) -> impl Iterator<Item = &EvidenceTable> {
        self.verdicts.iter().flat_map(|v| &v.tables)
    }

    pub fn table(&self, name: &str) -> Option<&EvidenceTable> {
        self.tables().find(|t| t.name == name)
    }
}

fn unitary(choice: UnitaryChoice) -> BasisShiftOp {
    match choice {
        UnitaryChoice::Standard => BasisShiftOp::identity(),
        UnitaryChoice::Alternate => BasisShiftOp::bilateral_shift(1),
        UnitaryChoice::InverseShift => BasisShiftOp::bilateral_shift(-1),
    }
}

/// The shift(s) named by the configuration; `example_3_6` gives two.
pub fn build_shifts(cfg: &RunConfig) -> Result<(Vec<GeneralizedShift>, Option<DisjointFamily>)> {
    let f = &cfg.family;
    let u = unitary(f.unitary);
    let single = match f.name {
        FamilyName::DisjointPair => {
            let pair = match f.unitary {
                UnitaryChoice::Alternate => family_example_3_6_alternate(),
                _ => family_example_3_6(),
            };
            return Ok((pair.shifts.clone(), Some(pair)));
        }
        FamilyName::Rational => family_example_3_2().with_unitary(u)?,
        FamilyName::Split => {
            family_example_3_11(f.alpha.ok_or_else(|| Error::ConfigInvalid("family.alpha missing".into()))?)?
                .with_unitary(u)?
        }
        FamilyName::Constant => {
            let op = BasisShiftOp::new(f.offset.unwrap_or(1), Coeff::Const(f.scale.unwrap_or(1.0)));
            family_constant(op, u)?
        }
        FamilyName::Custom => family_custom(f.offset.unwrap_or(1), f.custom_table(), f.default.unwrap_or(1.0), u)?,
    };
    Ok((vec![single], None))
}

fn one_shift(shifts: &[GeneralizedShift], sub: Subcommand) -> Result<&GeneralizedShift> {
    match shifts {
        [s] => Ok(s),
        _ => Err(Error::ConfigInvalid(format!("`{sub}` needs a single-shift family"))),
    }
}

fn vectors(cfg: &RunConfig, spec: FjmSpec, count: usize) -> Result<(ModuleVector, Vec<ModuleVector>)> {
    let scaled = |c: f64| make_fjm_vector(spec, &Fill::Compressed(FiniteOp::projection(spec.m).scaled(c)));
    let ys = &cfg.vectors.y_scales;
    if ys.len() != count && ys.len() != 1 {
        return Err(Error::ConfigInvalid(format!(
            "vectors.y_scales has {} entries for {count} shifts",
            ys.len()
        )));
    }
    let targets = (0..count).map(|l| scaled(ys[l.min(ys.len() - 1)])).collect();
    Ok((scaled(cfg.vectors.x_scale), targets))
}

fn norms(cfg: &RunConfig, shift: &GeneralizedShift) -> Result<CriterionVerdict> {
    let n = cfg.norms;
    let m = cfg.window.m;
    let closed = cfg.family.name == FamilyName::Rational && shift.is_identity_unitary();
    let mut table = EvidenceTable::new("norms", &["i", "m", "l", "numeric", "dense"]);
    let mut cf_table = EvidenceTable::new("closed_form", &["i", "m", "l", "numeric", "closed_form"]);
    let window = IndexWindow::new(cfg.truncation.half_width);
    let pm = FiniteOp::projection(m);
    let mut worst = 0.0f64;
    for i in n.i_min..=n.i_max {
        for l in n.l_min..=n.l_max {
            let numeric = forward_product_norm(shift.weights(), i, l, &pm)?;
            let dense = forward_product_norm_dense(shift.weights(), i, l, &pm, window)?;
            worst = worst.max((numeric - dense).abs());
            table.push(vec![i.into(), (m as u64).into(), l.into(), numeric.into(), dense.into()]);
            if let Some(cf) = rational_closed_form(i, m, l).filter(|_| closed) {
                worst = worst.max((numeric - cf).abs());
                cf_table.push(vec![i.into(), (m as u64).into(), l.into(), numeric.into(), cf.into()]);
            }
        }
    }
    let mut v = CriterionVerdict::new("norms", Holds::from_bool(worst < 1e-10));
    v.notes.push(format!("largest disagreement {worst:e}"));
    v.tables.push(table);
    if closed {
        v.notes.push(format!("{} entries inside the closed-form validity range", cf_table.rows.len()));
        v.tables.push(cf_table);
    }
    Ok(v)
}

fn star(cfg: &RunConfig, family: Option<&DisjointFamily>, shifts: &[GeneralizedShift]) -> Result<CriterionVerdict> {
    let m = cfg.window.m;
    let nm = match (cfg.star.nm, family) {
        (Some(nm), _) => nm,
        (None, Some(f)) => f.nm(m),
        (None, None) => return Err(Error::ConfigInvalid("star.nm is required for this family".into())),
    };
    let us: Vec<BasisShiftOp> = shifts.iter().map(|s| s.u().clone()).collect();
    let r = check_star_condition(&us, m, nm, cfg.star.probe)?;
    let mut v = CriterionVerdict::new("star", Holds::from_bool(r.holds));
    v.notes.push(format!("n in [{nm}, {}], m = {m}", nm + cfg.star.probe));
    if let Some((n, s, l, norm)) = r.violation {
        v.notes.push(format!("fails at n = {n} for (s, l) = ({s}, {l}) with norm {norm:e}"));
    }
    let mut table = EvidenceTable::new("star", &["n", "s", "l", "norm"]);
    for n in nm..=nm + cfg.star.probe.min(64) {
        for (s, us_) in us.iter().enumerate() {
            for (l, ul) in us.iter().enumerate() {
                if s != l {
                    let norm = crate::criteria::disjoint::star_norm(us_, ul, m, n)?;
                    table.push(vec![n.into(), (s + 1).into(), (l + 1).into(), norm.into()]);
                }
            }
        }
    }
    v.tables.push(table);
    Ok(v)
}

fn witness(cfg: &RunConfig, shifts: &[GeneralizedShift], spec: FjmSpec) -> Result<CriterionVerdict> {
    let nk = cfg.sequence.nk.build(cfg.horizons.k_count)?;
    let (x, ys) = vectors(cfg, spec, shifts.len())?;
    let approx = ApproximantFamily::projections(shifts.len());
    let mut cols = vec!["n_k".to_string(), "input_err".to_string()];
    cols.extend((1..=shifts.len()).map(|l| format!("output_err_{l}")));
    cols.extend(["bound".to_string(), "premise".to_string()]);
    let names: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut table = EvidenceTable::new("witness", &names);
    let eps = cfg.tolerances.eps;
    let mut last = None;
    for (k, &n) in nk.terms().iter().enumerate() {
        let r = disjoint_witness(shifts, spec, &x, &ys, n, &approx, k)?;
        let mut row: Vec<Cell> = vec![n.into(), r.input_error.into()];
        row.extend(r.output_errors.iter().map(|&e| Cell::from(e)));
        row.extend([Cell::from(r.bound), Cell::from(r.premise_holds(eps))]);
        table.push(row);
        last = Some(r);
    }
    let last = last.ok_or_else(|| Error::ConfigInvalid("sequence.nk is empty".into()))?;
    let mut v = CriterionVerdict::new("witness", Holds::from_bool(last.within(eps)));
    v.notes.push(format!("largest error at n_k = {}: {:e} (eps = {eps})", last.n, last.max_error()));
    v.tables.push(table);
    Ok(v)
}

fn scan(cfg: &RunConfig, shift: &GeneralizedShift, spec: FjmSpec) -> Result<CriterionVerdict> {
    let (x, ys) = vectors(cfg, spec, 1)?;
    let rs = return_set_scan(shift, spec, &x, &ys[0], cfg.tolerances.eps, cfg.horizons.n, &ApproximantFamily::default())?;
    let family = cfg.furstenberg;
    let mut v = CriterionVerdict::new("scan", Holds::from_bool(family.accepts(&rs)));
    v.notes.push(format!(
        "certified members: {} of {}, lower density {}, family {}",
        rs.len(),
        rs.horizon(),
        lower_density(&rs),
        family.label()
    ));
    if let Some(n0) = rs.cofinite_from() {
        v.notes.push(format!("every n ≥ {n0} certified"));
    }
    let mut table = EvidenceTable::new("scan", &["n", "member"]);
    for n in 0..=rs.horizon() {
        table.push(vec![n.into(), rs.contains(n).into()]);
    }
    v.tables.push(table);
    v.return_set = Some(rs);
    Ok(v)
}

fn periodic(cfg: &RunConfig, shift: &GeneralizedShift) -> Result<CriterionVerdict> {
    let p = cfg.periodic;
    let block = ModuleVector::single(p.coordinate, FiniteOp::projection(cfg.window.m));
    let ext = periodic_extension(shift, &block, p.period, p.copies)?;
    let residual = periodicity_residual(shift, &ext.vector, p.period, ext.interior)?;
    let mut v = CriterionVerdict::new("periodic", Holds::from_bool(residual < cfg.tolerances.periodic));
    v.notes.push(format!(
        "interior [{}, {}], residual {residual:e}",
        ext.interior.lo, ext.interior.hi
    ));
    if ext.beyond_identity_unitary {
        v.notes.push("U is not the identity: extension beyond the original periodic-point argument".into());
    }
    let mut table = EvidenceTable::new("periodic", &["coordinate", "norm"]);
    for (j, yj) in ext.vector.coords() {
        table.push(vec![j.into(), yj.norm()?.into()]);
    }
    v.notes.push(format!("module norm {}", module_norm(&ext.vector)?));
    v.tables.push(table);
    Ok(v)
}

/// Runs one subcommand. Module errors come back with the subcommand name
/// attached.
pub fn run(cfg: &RunConfig, sub: Subcommand) -> Result<RunReport> {
    cfg.validate()?;
    let (shifts, family) = build_shifts(cfg)?;
    let spec = FjmSpec::new(cfg.window.j, cfg.window.m);
    let (j, m) = (cfg.window.j, cfg.window.m);
    let opts = cfg.check_options();
    let approx = ApproximantFamily::projections(shifts.len());
    let verdict = match sub {
        Subcommand::Norms => norms(cfg, one_shift(&shifts, sub)?),
        Subcommand::Fhc => {
            let nk = cfg.sequence.nk.build(opts.k_count)?;
            check_fhc(one_shift(&shifts, sub)?, j, m, &nk, &approx, &opts)
        }
        Subcommand::Chaos => {
            let nk = cfg.sequence.nk.build(opts.k_count)?;
            check_chaos_equiv(one_shift(&shifts, sub)?, j, m, &nk, &approx, &opts)
        }
        Subcommand::Disjoint => {
            let nk = cfg.sequence.nk.build(opts.k_count)?;
            check_disjoint(&shifts, j, m, &nk, &approx, &opts)
        }
        Subcommand::Star => star(cfg, family.as_ref(), &shifts),
        Subcommand::Ftrans => {
            let n = cfg.horizons.n;
            let tn = cfg.sequence.tn.build(n as usize)?;
            check_f_transitivity(one_shift(&shifts, sub)?, &tn, j, m, cfg.furstenberg, &approx, cfg.tolerances.eps, n)
        }
        Subcommand::Witness => witness(cfg, &shifts, spec),
        Subcommand::Scan => scan(cfg, one_shift(&shifts, sub)?, spec),
        Subcommand::Periodic => periodic(cfg, one_shift(&shifts, sub)?),
    }
    .map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::InvalidParameter(format!("{sub}: {msg}")),
        other => other,
    })?;
    Ok(RunReport { subcommand: sub, config: cfg.clone(), verdicts: vec![verdict] })
}
