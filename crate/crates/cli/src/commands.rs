use std::collections::BTreeSet;

use fockhall_core::fock::{act_hayashi, bar_fock, canonical_table, fock_to_json, FockVector};
use fockhall_core::hall::{canonical_basis_hall, central_c, central_x, central_z, gamma_d, mul, Basis, HallElement};
use fockhall_core::quiver::{deg_leq, generic_ext, ladder_word, DimVector, Multisegment, Partition, QuiverKind};
use fockhall_core::wedge::{
    act_wedge, heisenberg_b, wedge_class, wedge_vector_from_json, wedge_vector_to_json, Generator, Sign, WedgeVector,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::render::{compact, Output};

pub fn parse_json(raw: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(raw).map_err(|e| CliError::usage(format!("{what}: malformed JSON: {e}")))
}

pub fn kind_of(cfg: &RunConfig, line: bool) -> Result<QuiverKind, CliError> {
    if line {
        Ok(QuiverKind::InfiniteLine)
    } else {
        Ok(QuiverKind::cyclic(cfg.n)?)
    }
}

pub fn multisegment(kind: QuiverKind, raw: &str, what: &str) -> Result<Multisegment, CliError> {
    Ok(Multisegment::from_json(kind, &parse_json(raw, what)?)?)
}

pub fn partition(raw: &str) -> Result<Partition, CliError> {
    Ok(Partition::from_json(&parse_json(raw, "partition")?)?)
}

pub fn dim_vector(raw: &str, what: &str) -> Result<DimVector, CliError> {
    Ok(DimVector::from_json(&parse_json(raw, what)?)?)
}

pub fn hall_element(raw: &str, what: &str) -> Result<HallElement, CliError> {
    Ok(HallElement::from_json(&parse_json(raw, what)?)?)
}

// ---- quiver ----

pub fn generic_extension(m1: &Multisegment, m2: &Multisegment) -> Result<Output, CliError> {
    let p = generic_ext(m1, m2)?;
    let mut out = Output::new(p.to_json(), vec!["m"]);
    out.row(vec![compact(&p.to_json())]);
    Ok(out)
}

pub fn degeneration(a: &Multisegment, b: &Multisegment) -> Result<Output, CliError> {
    if a.kind() != b.kind() {
        return Err(CliError::usage("both multisegments must live on the same quiver"));
    }
    let leq = deg_leq(a, b);
    let mut out = Output::new(json!({ "leq": leq }), vec!["leq"]);
    out.row(vec![leq.to_string()]);
    Ok(out)
}

pub fn ladder(lam: &Partition, n: i64) -> Result<Output, CliError> {
    let word = ladder_word(lam, n)?;
    let steps: Vec<Value> = word.iter().map(|&(i, k)| json!([i, k])).collect();
    let mut out = Output::new(json!({ "lambda": lam.to_json(), "n": n, "word": steps }), vec!["step", "residue", "power"]);
    for (s, &(i, k)) in word.iter().enumerate() {
        out.row(vec![(s + 1).to_string(), i.to_string(), k.to_string()]);
    }
    Ok(out)
}

// ---- hall ----

pub fn hall_output(x: &HallElement, basis: Basis) -> Output {
    let mut out = Output::new(x.to_json(basis), vec!["m", "coeff"]);
    for (m, _) in x.terms() {
        let c = match basis {
            Basis::U => x.coeff(m),
            Basis::Tilde => x.tilde_coeff(m),
        };
        out.row(vec![compact(&m.to_json()), c.to_string()]);
    }
    out
}

pub fn hall_mul(x: &HallElement, y: &HallElement, basis: Basis) -> Result<Output, CliError> {
    Ok(hall_output(&mul(x, y)?, basis))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Central {
    C,
    X,
    Z,
}

pub fn hall_central(which: Central, t: i64, n: i64, basis: Basis) -> Result<Output, CliError> {
    match which {
        Central::C => Ok(hall_output(&central_c(t, n)?, basis)),
        Central::X => Ok(hall_output(&central_x(t, n)?, basis)),
        Central::Z => {
            let z = central_z(t, n)?;
            let mut out = Output::new(z.to_json(), vec!["m", "coeff"]);
            for (m, c) in z.terms() {
                out.row(vec![compact(&m.to_json()), c.to_string()]);
            }
            Ok(out)
        }
    }
}

pub fn hall_gamma(d: &DimVector, x: &HallElement, basis: Basis) -> Result<Output, CliError> {
    Ok(hall_output(&gamma_d(d, x)?, basis))
}

pub fn hall_canonical(kind: QuiverKind, grade: &DimVector, basis: Basis) -> Result<Output, CliError> {
    let elements = canonical_basis_hall(kind, grade)?;
    let json: Vec<Value> =
        elements.iter().map(|(m, b)| json!({ "m": m.to_json(), "element": b.to_json(basis) })).collect();
    let mut out = Output::new(Value::Array(json), vec!["m", "p", "coeff"]);
    for (m, b) in elements.iter() {
        for (p, _) in b.terms() {
            let c = match basis {
                Basis::U => b.coeff(p),
                Basis::Tilde => b.tilde_coeff(p),
            };
            out.row(vec![compact(&m.to_json()), compact(&p.to_json()), c.to_string()]);
        }
    }
    Ok(out)
}

// ---- wedge ----

fn wedge_rows(out: &mut Output, label: Option<&str>, x: &WedgeVector) {
    for (w, c) in x.iter() {
        let mut row: Vec<String> = label.map(|l| vec![l.to_string()]).unwrap_or_default();
        row.extend([compact(&w.to_json()), c.to_string()]);
        out.row(row);
    }
}

/// Input `{"charge": m, "prefix": [..]}` with an arbitrary finite word.
pub fn straighten_wedge(raw: &str, n: i64) -> Result<Output, CliError> {
    let v = parse_json(raw, "wedge")?;
    let charge = v.get("charge").and_then(Value::as_i64).ok_or_else(|| CliError::usage("wedge needs an integer \"charge\""))?;
    let word = v
        .get("prefix")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::usage("wedge needs a \"prefix\" list"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| CliError::usage("prefix entries must be integers")))
        .collect::<Result<Vec<_>, _>>()?;
    let x = wedge_class(charge, &word, n)?;
    let mut out = Output::new(wedge_vector_to_json(&x), vec!["wedge", "coeff"]);
    wedge_rows(&mut out, None, &x);
    Ok(out)
}

pub fn heisenberg(raw: &str, t: i64, sign: Sign, n: i64) -> Result<Output, CliError> {
    let x = wedge_vector_from_json(&parse_json(raw, "wedge")?)?;
    let b = heisenberg_b(t, sign, &x, n)?;
    let z = act_wedge(&Generator::Z(t, sign), &x, n)?;
    let mut out = Output::new(
        json!({ "t": t, "sign": sign_name(sign), "B": wedge_vector_to_json(&b), "z": wedge_vector_to_json(&z) }),
        vec!["operator", "wedge", "coeff"],
    );
    wedge_rows(&mut out, Some("B"), &b);
    wedge_rows(&mut out, Some("z"), &z);
    Ok(out)
}

pub fn sign_name(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

// ---- fock ----

fn fock_output(x: &FockVector) -> Output {
    let mut out = Output::new(fock_to_json(x), vec!["mu", "coeff"]);
    for (mu, c) in x.iter().rev() {
        out.row(vec![compact(&mu.to_json()), c.to_string()]);
    }
    out
}

pub fn canonical(cfg: &RunConfig) -> Result<Output, CliError> {
    let table = canonical_table(cfg.n, cfg.max_size)?;
    let json: Vec<Value> = table.iter().map(|b| b.to_json()).collect();
    let mut out = Output::new(Value::Array(json), vec!["block", "lambda", "mu", "coeff"]);
    for block in &table {
        for (lam, b) in &block.rows {
            for (mu, c) in b.iter().rev() {
                out.row(vec![compact(&block.content.to_json()), compact(&lam.to_json()), compact(&mu.to_json()), c.to_string()]);
            }
        }
    }
    Ok(out)
}

/// `E<i>`, `F<i>`, `K<i>`, `Kinv<i>`, `Kdelta<t>`, `z+<t>`, `z-<t>`.
pub fn generator(raw: &str) -> Result<Generator, CliError> {
    let bad = || CliError::usage(format!("unknown generator {raw:?}; expected E<i>, F<i>, K<i>, Kinv<i>, Kdelta<t>, z+<t> or z-<t>"));
    let heads: [(&str, fn(i64) -> Generator); 7] = [
        ("Kdelta", Generator::KDelta),
        ("Kinv", Generator::k_inv),
        ("z+", |t| Generator::Z(t, Sign::Plus)),
        ("z-", |t| Generator::Z(t, Sign::Minus)),
        ("E", Generator::e),
        ("F", Generator::f),
        ("K", Generator::k),
    ];
    let (build, idx) = heads
        .iter()
        .find_map(|(h, build)| raw.strip_prefix(h).map(|rest| (build, rest)))
        .ok_or_else(bad)?;
    Ok(build(idx.parse().map_err(|_| bad())?))
}

pub fn act(gen: &Generator, lam: &Partition, n: i64) -> Result<Output, CliError> {
    Ok(fock_output(&act_hayashi(gen, &FockVector::basis(lam.clone()), n)?))
}

pub fn bar(lam: &Partition, n: i64) -> Result<Output, CliError> {
    Ok(fock_output(&bar_fock(&FockVector::basis(lam.clone()), n)?))
}


/// Every dimension vector over `ℤ/n` with total `k`.
pub fn grades_of_total(n: i64, k: i64) -> Vec<DimVector> {
    let mut grades = BTreeSet::from([DimVector::zero()]);
    for _ in 0..k {
        grades = grades.iter().flat_map(|g| (0..n).map(move |i| g + &DimVector::unit(i))).collect();
    }
    grades.into_iter().collect()
}
