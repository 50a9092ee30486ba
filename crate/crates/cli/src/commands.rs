use std::collections::BTreeMap;

use cremona_core::algebraic::Entropy;
use cremona_core::birmap::{degree_sequence, MapSpec, ProjMap, ProjPoint};
use cremona_core::cubes::{self, GroupElement};
use cremona_core::invariants::{self as inv, DivisorSpec, RationalFunction};
use cremona_core::khk::{self, EulerParams};
use cremona_core::picard;
use cremona_core::polyring::{parse_poly, LinearForm, Monomial};
use cremona_core::reproduce;
use cremona_core::seqfit;
use cremona_core::singular;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::{CliError, Format};

pub struct Output {
    pub value: Value,
    pub csv: Option<String>,
    pub ok: bool,
}

impl Output {
    fn json(value: Value) -> Self {
        Self { value, csv: None, ok: true }
    }

    fn verified(value: Value, ok: bool) -> Self {
        Self { value, csv: None, ok }
    }

    pub fn render(&self, format: Format) -> String {
        match (format, &self.csv) {
            (Format::Csv, Some(csv)) => csv.trim_end().to_string(),
            _ => serde_json::to_string(&self.value).expect("serializable"),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn int(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v))
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn point(p: &ProjPoint) -> Value {
    ints(p.coords())
}

fn parse_map(text: &str) -> Result<ProjMap, CliError> {
    let spec = MapSpec::parse(text).map_err(|e| usage(format!("--map: {e}")))?;
    spec.resolve().map_err(|e| usage(format!("--map: {e}")))
}

/// `g` with `Φ = g ∘ C3`, when `Φ ∘ C3` is linear and `g` lies in the group.
fn group_factor(phi: &ProjMap) -> Option<GroupElement> {
    if phi.nvars() != 4 {
        return None;
    }
    let lin = ProjMap::compose(phi, &ProjMap::cremona(4)).ok()?.map;
    if lin.degree() != 1 {
        return None;
    }
    let m: Vec<Vec<BigInt>> = lin
        .components()
        .iter()
        .map(|c| (0..4).map(|j| c.coeff(&Monomial::var(j))).collect())
        .collect();
    GroupElement::from_imat(&m).ok()
}

fn entropy_value(kind: &str, e: &Entropy) -> Value {
    let root = e.dominant_root.as_ref();
    json!({
        "kind": kind,
        "zero": e.zero,
        "min_poly": root.map(|r| r.min_poly.clone()),
        "interval": root.map(|r| [r.lo.to_string(), r.hi.to_string()]),
        "approx": e.value,
        "cyclotomic_factors": e.cyclotomic_factors,
    })
}

pub fn group_enumerate(count_only: bool) -> Result<Output, CliError> {
    let g = cubes::enumerate_group().map_err(usage)?;
    let by: BTreeMap<String, usize> = cubes::count_by_type(&g).map_err(usage)?.into_iter().map(|(t, n)| (format!("{t:?}"), n)).collect();
    let mut v = json!({ "total": g.len(), "by_type": by });
    if !count_only {
        let elems: Vec<Value> = g
            .iter()
            .map(|e| json!({ "matrix": e.matrix(), "type": e.classify().map(|t| format!("{t:?}")).ok(), "order": e.order() }))
            .collect();
        v["elements"] = Value::Array(elems);
    }
    Ok(Output::json(v))
}

pub fn group_classify(matrix: &str) -> Result<Output, CliError> {
    let m: cubes::Mat4 = serde_json::from_str(matrix).map_err(|e| usage(format!("--matrix: {e}")))?;
    let g = GroupElement::from_mat(m).map_err(|e| usage(format!("--matrix: {e}")))?;
    let t = g.classify().map_err(usage)?;
    Ok(Output::json(json!({ "type": format!("{t:?}"), "order": g.order(), "orbit_size": t.orbit_size() })))
}

pub fn degrees(map: &str, n: usize, cap: u64, lattice: bool) -> Result<Output, CliError> {
    let phi = parse_map(map)?;
    let (values, truncated): (Vec<BigInt>, bool) = if lattice {
        let g = group_factor(&phi).ok_or_else(|| usage("--lattice requires a map g∘C3 with g in the group"))?;
        (picard::lattice_degrees(&g, n as u64), false)
    } else {
        let s = degree_sequence(&phi, n, cap);
        (s.values.iter().map(|&d| BigInt::from(d)).collect(), s.truncated)
    };
    let mut v = json!({ "degrees": ints(&values) });
    if truncated {
        v["truncated"] = json!(true);
    }
    let csv = std::iter::once("n,degree".to_string())
        .chain(values.iter().enumerate().map(|(i, d)| format!("{i},{d}")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output { value: v, csv: Some(csv), ok: true })
}

pub fn entropy(map: &str, exact: bool, n: usize, cap: u64) -> Result<Output, CliError> {
    let phi = parse_map(map)?;
    if exact {
        let g = group_factor(&phi).ok_or_else(|| usage("--exact requires a map g∘C3 with g in the group"))?;
        return Ok(Output::json(json!({ "entropy": entropy_value("exact", &picard::exact_entropy(&g)) })));
    }
    let seq = degree_sequence(&phi, n, cap);
    let ds: Vec<BigInt> = seq.values.iter().map(|&d| BigInt::from(d)).collect();
    let v = match seqfit::entropy_estimate(&ds) {
        Ok(e) => entropy_value("recurrence", &e),
        Err(_) => {
            let last = |i: usize| ds.get(i).and_then(ToPrimitive::to_f64).unwrap_or(1.0);
            let k = ds.len() - 1;
            let approx = if k == 0 { 0.0 } else { (last(k) / last(k - 1)).ln() };
            json!({ "kind": "ratio", "approx": approx })
        }
    };
    Ok(Output::json(json!({ "entropy": v, "degrees": ints(&ds) })))
}

fn parse_plane(text: &str, nvars: usize) -> Result<LinearForm, CliError> {
    let p = parse_poly(text, nvars).map_err(|e| usage(format!("--plane: {e}")))?;
    if p.degree() != Some(1) {
        return Err(usage("--plane must be a linear form"));
    }
    LinearForm::new((0..nvars).map(|j| p.coeff(&Monomial::var(j))).collect()).map_err(usage)
}

pub fn orbit(map: &str, plane: &str, seed: u64, max_steps: usize) -> Result<Output, CliError> {
    let phi = parse_map(map)?;
    let plane = parse_plane(plane, phi.nvars())?;
    let probes = singular::probe_points(&phi, &plane, seed).map_err(usage)?;
    let o = singular::trace_singular_orbit(&phi, &plane, &probes, max_steps).map_err(usage)?;
    Ok(Output::json(json!({
        "plane": plane.to_string(),
        "chain": o.chain.iter().map(point).collect::<Vec<_>>(),
        "outcome": o.outcome,
        "length": o.length,
    })))
}

pub fn invariant_check(map: &str, function: &str, k_max: u32) -> Result<Output, CliError> {
    let phi = parse_map(map)?;
    let r = RationalFunction::parse(function).map_err(|e| usage(format!("--function: {e}")))?;
    let class = inv::invariance_class(&phi, &r, k_max.max(1)).map_err(usage)?;
    Ok(Output::json(json!({ "class": class.to_string() })))
}

pub fn covariance_check(map: &str, system: &str, divisor: &str) -> Result<Output, CliError> {
    let phi = parse_map(map)?;
    let sys = inv::system_by_name(system).ok_or_else(|| usage(format!("--system: unknown system '{system}'")))?;
    let d = DivisorSpec::parse(divisor).filter(|d| d.0.len() == phi.nvars()).ok_or_else(|| usage(format!("--divisor: bad value '{divisor}'")))?;
    match inv::check_covariance(&phi, &sys, &d) {
        Ok(cov) => Ok(Output::json(json!({ "covariant": true, "system": system, "automorphism": cov }))),
        Err(inv::InvariantsError::DegreeBookkeeping { .. } | inv::InvariantsError::NoInverse) => {
            Err(usage(format!("--divisor: degree bookkeeping fails for {system} with {divisor}")))
        }
        Err(e) => Err(CliError::Verification(e.to_string())),
    }
}

pub fn euler(a: &[String], h: &str, verify: bool) -> Result<Output, CliError> {
    let p = EulerParams::parse(a, h).map_err(|e| usage(format!("--a/--h: {e}")))?;
    let phi = khk::build_euler(&p).map_err(usage)?;
    let comps: Vec<String> = phi.components().iter().map(ToString::to_string).collect();
    let mut v = json!({ "components": comps });
    if !verify {
        return Ok(Output::json(v));
    }
    let mut checks: BTreeMap<&str, bool> = BTreeMap::new();
    let (kappa, _) = singular::kappa_lambda(&phi).map_err(|e| CliError::Verification(e.to_string()))?;
    let squares = singular::factor_linear_forms(&kappa, &singular::euler_candidates(&p))
        .map(|f| {
            let mut got: Vec<_> = f.factors.iter().map(|(l, m)| (l.clone(), *m)).collect();
            let mut want: Vec<_> = khk::euler_kappa_forms(&p).into_iter().map(|l| (l, 2)).collect();
            got.sort();
            want.sort();
            got == want
        })
        .unwrap_or(false);
    checks.insert("kappa_is_product_of_squares", squares);
    let report = khk::verify_euler_decomposition(&p).map_err(|e| CliError::Verification(e.to_string()))?;
    checks.insert("decomposition", report.corrected_ok());
    let invariant = |f: &RationalFunction| inv::invariance_class(&phi, f, 1).is_ok_and(|c| c == inv::InvarianceClass::Invariant);
    let [i1, i2] = inv::euler_invariants(&p);
    checks.insert("i1_invariant", invariant(&i1));
    checks.insert("i2_invariant", invariant(&i2));
    let [f1, f2] = inv::euler_literature_invariants(&p);
    checks.insert("f1_invariant", invariant(&f1));
    checks.insert("f2_invariant", invariant(&f2));
    let rel = inv::euler_functional_relations(&p).unwrap_or([false, false]);
    checks.insert("functional_relation_f1", rel[0]);
    checks.insert("functional_relation_f2", rel[1]);
    checks.insert("net_covariant", inv::check_covariance(&phi, &inv::euler_net(&p), &DivisorSpec::hbar(4)).is_ok());
    let singular_ok = khk::euler_singular_points(&p).iter().all(|(s, sp)| phi.apply_point(s).is_ok_and(|img| &img == sp));
    checks.insert("singular_points", singular_ok);
    let ok = checks.values().all(|&b| b);
    v["checks"] = json!(checks);
    v["decomposition"] = json!(report);
    v["pass"] = json!(ok);
    Ok(Output::verified(v, ok))
}

pub fn fit(sequence: &[String]) -> Result<Output, CliError> {
    let seq: Vec<BigInt> = sequence
        .iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| usage(format!("--sequence: '{s}' is not an integer"))))
        .collect::<Result<_, _>>()?;
    let rec = seqfit::min_recurrence(&seq).map_err(|e| usage(format!("--sequence: {e}")))?;
    let gf = seqfit::generating_function(&seq).map_err(|e| usage(format!("--sequence: {e}")))?;
    let e = seqfit::entropy_estimate(&seq).map_err(|e| usage(format!("--sequence: {e}")))?;
    Ok(Output::json(json!({
        "recurrence": rec,
        "characteristic_polynomial": ints(&rec.characteristic_polynomial()),
        "generating_function": gf,
        "entropy": entropy_value("recurrence", &e),
    })))
}

pub fn reproduce(id: &str) -> Result<Output, CliError> {
    if id == "all" {
        let reports = reproduce::run_all();
        let ok = reports.iter().all(|r| r.pass);
        return Ok(Output::verified(json!(reports), ok));
    }
    let r = reproduce::run(id).map_err(|e| usage(format!("{e}; known: all, {}", reproduce::PROP_IDS.join(", "))))?;
    let ok = r.pass;
    Ok(Output::verified(json!(r), ok))
}
