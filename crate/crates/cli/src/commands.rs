//! Named-argument invocations shared by the scenario runner and the subcommands.

use std::collections::BTreeMap;

use conevanish_core::cohomology::ProjectiveScheme;
use conevanish_core::{
    betti_table, free_resolution, hilbert_series, is_cohen_macaulay, is_gorenstein_graded,
    kernel_of_map_mod, parse_polynomial, AlgebraError, Document, Field, Ideal, Polynomial, Result,
    RingMap,
};
use conevanish_verify::certificate::{ideal_json, polys_json};
use conevanish_verify::segre::positional_ideal;
use conevanish_verify::verifiers::{default_normality_dmax, E1Options, GorensteinMode};
use conevanish_verify::{
    blowup_chart, build_product_instance, build_segre, check_blowup_gorenstein,
    check_exceptional_fiber, check_projective_normality, fiber_cone, rees_presentation,
    verify_example_e1, Certificate, ReesPresentation, Verdict,
};
use serde_json::{json, Value};

/// Declared objects visible to invocations.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub ideals: BTreeMap<String, Ideal>,
    pub maps: BTreeMap<String, RingMap>,
    pub polys: BTreeMap<String, Polynomial>,
    /// First declared ideal, used when no `ideal=` is given.
    pub first_ideal: Option<String>,
    /// Field for objects built from scratch (Segre rings, default cubics).
    pub field: Option<Field>,
}

impl Env {
    pub fn from_document(doc: &Document) -> Self {
        let mut env = Env::default();
        for (n, i) in &doc.ideals {
            env.insert_ideal(n, i.clone());
        }
        for (n, m) in &doc.maps {
            env.maps.insert(n.clone(), m.clone());
        }
        for (n, p) in &doc.polys {
            env.polys.insert(n.clone(), p.clone());
        }
        env
    }

    pub fn insert_ideal(&mut self, name: &str, ideal: Ideal) {
        if self.first_ideal.is_none() {
            self.first_ideal = Some(name.to_string());
        }
        self.ideals.insert(name.to_string(), ideal);
    }

    pub fn knows(&self, name: &str) -> bool {
        self.ideals.contains_key(name) || self.maps.contains_key(name) || self.polys.contains_key(name)
    }
}

/// Argument keys whose values name declared objects.
pub const NAME_KEYS: [&str; 10] = ["ideal", "iv", "iw", "e1", "e2", "base", "center", "map", "modulo", "by"];

/// One command with its `key=value` arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: Vec<String>,
    pub args: BTreeMap<String, String>,
}

impl Invocation {
    pub fn new(command: &[&str]) -> Self {
        Self { command: command.iter().map(|s| s.to_string()).collect(), args: BTreeMap::new() }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }

    pub fn name(&self) -> String {
        self.command.join(" ")
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.args.get(key).map(String::as_str)
    }

    fn int(&self, key: &str) -> Result<Option<i64>> {
        self.get(key)
            .map(|v| v.parse::<i64>().map_err(|_| AlgebraError::Invalid(format!("{key}={v} is not an integer"))))
            .transpose()
    }

    fn flag(&self, key: &str) -> bool {
        matches!(self.get(key), Some("true" | "yes" | "1"))
    }

    fn ideal<'a>(&self, env: &'a Env, key: &str) -> Result<&'a Ideal> {
        let name = match self.get(key) {
            Some(n) => n.to_string(),
            None if key == "ideal" => env.first_ideal.clone().ok_or_else(|| missing(key))?,
            None => return Err(missing(key)),
        };
        env.ideals.get(&name).ok_or_else(|| AlgebraError::Invalid(format!("unknown ideal `{name}`")))
    }
}

fn missing(key: &str) -> AlgebraError {
    AlgebraError::Invalid(format!("missing argument `{key}`"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeStatus {
    /// A computation without a verdict finished.
    Ok,
    Pass,
    Fail,
    Inconclusive,
    BudgetExhausted,
    Error,
}

impl OutcomeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeStatus::Ok => "ok",
            OutcomeStatus::Pass => "pass",
            OutcomeStatus::Fail => "fail",
            OutcomeStatus::Inconclusive => "inconclusive",
            OutcomeStatus::BudgetExhausted => "budget_exhausted",
            OutcomeStatus::Error => "error",
        }
    }

    pub fn is_success(self) -> bool {
        matches!(self, OutcomeStatus::Ok | OutcomeStatus::Pass)
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub invocation: Invocation,
    pub status: OutcomeStatus,
    pub result: Value,
    pub certificate: Option<Certificate>,
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.invocation.name(),
            "args": self.invocation.args,
            "status": self.status.as_str(),
            "result": self.result,
        })
    }
}

fn certificate_outcome(inv: &Invocation, cert: Certificate) -> Outcome {
    let status = match cert.verdict() {
        Verdict::Fail => OutcomeStatus::Fail,
        Verdict::Inconclusive => OutcomeStatus::Inconclusive,
        Verdict::Pass if cert.budget_exhausted() => OutcomeStatus::BudgetExhausted,
        Verdict::Pass => OutcomeStatus::Pass,
    };
    Outcome { invocation: inv.clone(), status, result: cert.to_json(), certificate: Some(cert) }
}

/// Runs one invocation; errors become an outcome rather than aborting.
pub fn execute(inv: &Invocation, env: &Env) -> Outcome {
    match dispatch(inv, env) {
        Ok(Done::Value(v)) => Outcome { invocation: inv.clone(), status: OutcomeStatus::Ok, result: v, certificate: None },
        Ok(Done::Certificate(c)) => certificate_outcome(inv, c),
        Err(e) => {
            let status = if matches!(e, AlgebraError::BudgetExceeded(_)) {
                OutcomeStatus::BudgetExhausted
            } else {
                OutcomeStatus::Error
            };
            Outcome { invocation: inv.clone(), status, result: json!({ "error": e.to_string() }), certificate: None }
        }
    }
}

enum Done {
    Value(Value),
    Certificate(Certificate),
}

fn field_of(env: &Env) -> Result<Field> {
    match env.field {
        Some(f) => Ok(f),
        None => Field::prime(31),
    }
}

fn rees_from(inv: &Invocation, env: &Env) -> Result<ReesPresentation> {
    if inv.get("base").is_some() || inv.get("center").is_some() {
        return rees_presentation(inv.ideal(env, "base")?, inv.ideal(env, "center")?);
    }
    let inst = instance_from(inv, env)?;
    rees_presentation(&inst.iy, &inst.iz)
}

fn instance_from(inv: &Invocation, env: &Env) -> Result<conevanish_verify::ProductConeInstance> {
    let iv = inv.ideal(env, "iv")?;
    let iw = inv.ideal(env, "iw")?;
    let ctx = build_segre(iv.ring().nvars() - 1, iw.ring().nvars() - 1, iv.ring().field())?;
    build_product_instance(&ctx, iv, iw)
}

fn fermat(env: &Env, prefix: &str) -> Result<Ideal> {
    let ctx = build_segre(2, 2, field_of(env)?)?;
    let ring = if prefix == "x" { ctx.ring_x } else { ctx.ring_y };
    let f = parse_polynomial(&ring, &format!("{prefix}0^3 + {prefix}1^3 + {prefix}2^3"))?;
    Ok(Ideal::new(&ring, vec![f]))
}

fn dispatch(inv: &Invocation, env: &Env) -> Result<Done> {
    let cmd: Vec<&str> = inv.command.iter().map(String::as_str).collect();
    let value = match cmd.as_slice() {
        ["gb"] => {
            let i = inv.ideal(env, "ideal")?;
            let gb = i.groebner()?;
            let s = gb.stats();
            let mut v = ideal_json(i)?;
            v["stats"] = json!({
                "pairs_processed": s.pairs_processed,
                "pairs_skipped": s.pairs_skipped,
                "zero_reductions": s.zero_reductions,
                "max_degree": s.max_degree,
            });
            v
        }
        ["nf"] => {
            let i = inv.ideal(env, "ideal")?;
            let f = match (inv.get("poly"), inv.get("expr")) {
                (Some(n), _) => env.polys.get(n).cloned().ok_or_else(|| AlgebraError::Invalid(format!("unknown polynomial `{n}`")))?,
                (None, Some(e)) => parse_polynomial(i.ring(), e)?,
                (None, None) => return Err(missing("poly")),
            };
            json!({ "normal_form": i.normal_form(&f)?.to_string() })
        }
        ["eliminate"] => {
            let i = inv.ideal(env, "ideal")?;
            let names = inv.get("keep").ok_or_else(|| missing("keep"))?;
            let keep = names
                .split(',')
                .map(|n| i.ring().var_index(n.trim()).ok_or_else(|| AlgebraError::UnknownVariable(n.trim().to_string())))
                .collect::<Result<Vec<_>>>()?;
            ideal_json(&i.eliminate(&keep)?)?
        }
        ["saturate"] => {
            let i = inv.ideal(env, "ideal")?;
            let by = match inv.get("by") {
                Some(_) => inv.ideal(env, "by")?.clone(),
                None => Ideal::irrelevant(i.ring()),
            };
            ideal_json(&i.saturate(&by)?)?
        }
        ["kernel"] => {
            let name = inv.get("map").ok_or_else(|| missing("map"))?;
            let m = env.maps.get(name).ok_or_else(|| AlgebraError::Invalid(format!("unknown map `{name}`")))?;
            let modulo = match inv.get("modulo") {
                Some(_) => Some(inv.ideal(env, "modulo")?),
                None => None,
            };
            ideal_json(&kernel_of_map_mod(m, modulo)?)?
        }
        ["hilbert"] => {
            let i = inv.ideal(env, "ideal")?;
            let h = hilbert_series(i)?;
            let upto = inv.int("upto")?.unwrap_or(10);
            let values: Vec<Value> = (0..=upto).map(|d| json!({ "d": d, "value": h.value(d) })).collect();
            json!({
                "numerator": h.numerator,
                "ambient_vars": h.ambient_vars,
                "dimension": h.dimension,
                "degree": h.degree,
                "values": values,
            })
        }
        ["betti"] => {
            let i = inv.ideal(env, "ideal")?;
            let b = betti_table(i)?;
            let entries: Vec<Value> = b.entries().map(|(i, j, v)| json!({ "i": i, "j": j, "value": v })).collect();
            json!({ "betti": entries, "projective_dimension": b.length(), "regularity": b.regularity() })
        }
        ["cm"] => json!({ "cohen_macaulay": is_cohen_macaulay(inv.ideal(env, "ideal")?)? }),
        ["gorenstein"] => {
            let i = inv.ideal(env, "ideal")?;
            let res = free_resolution(i)?;
            json!({
                "cohen_macaulay": is_cohen_macaulay(i)?,
                "gorenstein": is_gorenstein_graded(i)?,
                "last_betti": res.degrees.last().map_or(0, Vec::len),
            })
        }
        ["cohomology"] => {
            let i = inv.ideal(env, "ideal")?;
            let idx = inv.int("i")?.ok_or_else(|| missing("i"))?;
            let twist = inv.int("twist")?.ok_or_else(|| missing("twist"))?;
            if idx < 0 {
                return Err(AlgebraError::OutOfRange(format!("cohomological index {idx}")));
            }
            let x = ProjectiveScheme::new(i, inv.flag("saturate"))?;
            json!({ "i": idx, "twist": twist, "value": x.h(idx as usize, twist)? })
        }
        ["segre"] => {
            let n = inv.int("n")?.ok_or_else(|| missing("n"))?;
            let m = inv.int("m")?.ok_or_else(|| missing("m"))?;
            if n < 0 || m < 0 {
                return Err(AlgebraError::OutOfRange("n and m must be non-negative".into()));
            }
            let ctx = build_segre(n as usize, m as usize, field_of(env)?)?;
            let minors: Vec<String> = ctx.segre_ideal.gens().iter().map(|g| g.to_string()).collect();
            json!({ "n": n, "m": m, "ring": ctx.ring_z.to_string(), "minors": minors })
        }
        ["instance"] => {
            let inst = instance_from(inv, env)?;
            json!({
                "iy": ideal_json(&inst.iy)?,
                "substitution_generators": inst.substitution.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "iz": polys_json(&inst.iz)?,
            })
        }
        ["rees"] => {
            let r = rees_from(inv, env)?;
            json!({ "ambient": r.ambient.to_string(), "rees_ideal": polys_json(&r.rees_ideal)? })
        }
        ["fiber-cone"] => {
            let r = rees_from(inv, env)?;
            let f = fiber_cone(&r)?;
            json!({ "ring": f.ring().to_string(), "ideal": polys_json(&f)? })
        }
        ["chart"] => {
            let r = rees_from(inv, env)?;
            let j = inv.int("j")?.ok_or_else(|| missing("j"))?;
            let j = usize::try_from(j).map_err(|_| AlgebraError::OutOfRange(format!("chart index {j}")))?;
            let c = blowup_chart(&r, j)?;
            json!({ "j": j, "ring": c.ring().to_string(), "ideal": polys_json(&c)? })
        }
        ["verify", "prop32" | "fiber"] => {
            return Ok(Done::Certificate(check_exceptional_fiber(&instance_from(inv, env)?)?));
        }
        ["verify", "normality"] => {
            let (iv, iw) = (inv.ideal(env, "iv")?, inv.ideal(env, "iw")?);
            let d_max = match inv.int("dmax")? {
                Some(d) if d >= 1 => d as usize,
                Some(d) => return Err(AlgebraError::OutOfRange(format!("dmax={d}"))),
                None => default_normality_dmax(iv, iw),
            };
            return Ok(Done::Certificate(check_projective_normality(iv, iw, d_max)?));
        }
        ["verify", "gorenstein"] => {
            let mode = match inv.get("mode").unwrap_or("hypothesis") {
                "hypothesis" => GorensteinMode::Hypothesis,
                "direct" => GorensteinMode::Direct,
                other => return Err(AlgebraError::Invalid(format!("unknown mode `{other}`"))),
            };
            return Ok(Done::Certificate(check_blowup_gorenstein(&instance_from(inv, env)?, mode)?));
        }
        ["verify", "e1" | "nonvanishing"] => {
            let e1 = match inv.get("e1") {
                Some(_) => inv.ideal(env, "e1")?.clone(),
                None => fermat(env, "x")?,
            };
            let e2 = match inv.get("e2") {
                Some(_) => inv.ideal(env, "e2")?.clone(),
                None => fermat(env, "y")?,
            };
            let e2 = if e2.ring().field() != e1.ring().field() {
                let ctx = build_segre(2, 2, e1.ring().field())?;
                positional_ideal(&e2, &ctx.ring_y)?
            } else {
                e2
            };
            let opts = E1Options { direct_gorenstein: inv.flag("direct") };
            return Ok(Done::Certificate(verify_example_e1(&e1, &e2, opts)?));
        }
        _ => return Err(AlgebraError::Invalid(format!("unknown command `{}`", inv.name()))),
    };
    Ok(Done::Value(value))
}
