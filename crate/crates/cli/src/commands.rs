use anyhow::{bail, Context};
use serde_json::json;

use formgroup_core::complexes::ce::increasing_tuples;
use formgroup_core::complexes::{ce_cohomology, chain_map_check, phi_explicit, phi_full, CECochain, CobarCochain};
use formgroup_core::hopf::tals_with;
use formgroup_core::padic::{convergence_check, normality_check, Verdict};
use formgroup_core::rational::{big, factorial, format_rational};
use formgroup_core::{FormalGroupLaw, LieAlgebra, MultiIndex, Pairing, Rational, TruncatedSeries};

use crate::Outcome;

fn yes_no(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn header(g: &FormalGroupLaw) -> String {
    format!("law: {} (dim {}, trunc {})", g.name(), g.dim(), g.trunc())
}

/// `X1 Y1 Z2` style names for a monomial in `blocks * m` variables.
fn block_monomial(idx: &MultiIndex, m: usize) -> String {
    const NAMES: [char; 3] = ['X', 'Y', 'Z'];
    let parts: Vec<String> = idx
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            let name = format!("{}{}", NAMES[v / m], v % m + 1);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

pub fn fgl_check(g: &FormalGroupLaw) -> Outcome {
    let r = g.check_axioms();
    let commutative = g.is_commutative();
    let mut lines = vec![
        header(g),
        format!("unit: {}", yes_no(r.unit_ok)),
        format!("associativity: {}", yes_no(r.assoc_ok)),
    ];
    let violation = r.first_violation.as_ref().map(|v| {
        lines.push(format!(
            "residual: component {}, {}*{} (degree {})",
            v.component + 1,
            format_rational(&v.coefficient),
            block_monomial(&v.index, g.dim()),
            v.index.total_degree()
        ));
        json!({
            "component": v.component + 1,
            "index": v.index.exponents(),
            "coefficient": format_rational(&v.coefficient),
        })
    });
    lines.push(format!("commutative: {}", if commutative { "yes" } else { "no" }));
    lines.push(format!("result: {}", if r.passed() { "pass" } else { "fail" }));
    Outcome {
        lines,
        report: json!({
            "fgl": g.name(),
            "dim": g.dim(),
            "trunc": g.trunc(),
            "unit_ok": r.unit_ok,
            "assoc_ok": r.assoc_ok,
            "commutative": commutative,
            "violation": violation,
            "passed": r.passed(),
        }),
        passed: r.passed(),
    }
}

pub fn fgl_export(g: &FormalGroupLaw) -> Outcome {
    let file = formgroup_core::io::FglFile::from_law(g);
    Outcome {
        lines: vec![formgroup_core::io::write_fgl(g)],
        report: serde_json::to_value(file).expect("plain data"),
        passed: true,
    }
}

pub fn antipode(g: &FormalGroupLaw) -> Outcome {
    let s = g.antipode();
    let lines: Vec<String> = s.iter().map(ToString::to_string).collect();
    Outcome {
        report: json!({ "fgl": g.name(), "trunc": g.trunc(), "antipode": lines }),
        lines,
        passed: true,
    }
}

pub fn lie(g: &FormalGroupLaw) -> anyhow::Result<Outcome> {
    let l = LieAlgebra::from_fgl(g)?;
    let brackets: Vec<_> = l
        .nonzero_brackets()
        .into_iter()
        .map(|(i, j, k, c)| json!({ "i": i, "j": j, "k": k, "c": format_rational(&c) }))
        .collect();
    Ok(Outcome {
        lines: l.to_string().lines().map(String::from).collect(),
        report: json!({ "fgl": g.name(), "dim": l.dim(), "brackets": brackets }),
        passed: true,
    })
}

pub fn cohomology(g: &FormalGroupLaw) -> anyhow::Result<Outcome> {
    let l = LieAlgebra::from_fgl(g)?;
    let betti = ce_cohomology(&l);
    let text: Vec<String> = betti.iter().map(ToString::to_string).collect();
    Ok(Outcome {
        lines: vec![header(g), format!("betti: [{}]", text.join(", "))],
        report: json!({ "fgl": g.name(), "betti": betti }),
        passed: true,
    })
}

pub fn phi(g: &FormalGroupLaw, n: usize, cochain: Option<&str>) -> anyhow::Result<Outcome> {
    let m = g.dim();
    let mut lines = vec![header(g)];
    if let Some(text) = cochain {
        let body = TruncatedSeries::parse(text, n * m, g.trunc()).context("parsing --cochain")?;
        let c = CobarCochain::new(m, n, body)?;
        let full = phi_full(g, &c)?;
        let explicit = phi_explicit(&c);
        let agree = full == explicit;
        lines.push(format!("phi_full: {full}"));
        lines.push(format!("phi_explicit: {explicit}"));
        lines.push(format!("agree: {}", if agree { "yes" } else { "no" }));
        return Ok(Outcome {
            lines,
            report: json!({
                "fgl": g.name(),
                "n": n,
                "cochain": c.to_string(),
                "phi_full": full.to_string(),
                "phi_explicit": explicit.to_string(),
                "agree": agree,
            }),
            passed: agree,
        });
    }
    if n > m {
        bail!("degree {n} exceeds the dimension {m}");
    }
    let mut witnesses = Vec::new();
    let mut passed = true;
    for t in increasing_tuples(m, n) {
        let factors: Vec<TruncatedSeries> = t.iter().map(|&i| TruncatedSeries::var(m, g.trunc(), i)).collect();
        let c = if n == 0 {
            CobarCochain::constant(m, g.trunc(), Rational::from_integer(1.into()))
        } else {
            CobarCochain::tensor(&factors)?
        };
        let image = phi_full(g, &c)?;
        let ok = image == CECochain::basis(m, &t) && image == phi_explicit(&c);
        passed &= ok;
        let label: Vec<String> = t.iter().map(|i| format!("t^({})", i + 1)).collect();
        let label = if label.is_empty() { "1".to_string() } else { label.join(" ⊗ ") };
        lines.push(format!("{label} -> {image} {}", if ok { "ok" } else { "MISMATCH" }));
        witnesses.push(json!({ "cochain": label, "image": image.to_string(), "ok": ok }));
    }
    lines.push(format!("result: {}", if passed { "pass" } else { "fail" }));
    Ok(Outcome {
        lines,
        report: json!({ "fgl": g.name(), "n": n, "witnesses": witnesses, "passed": passed }),
        passed,
    })
}

pub fn chainmap(g: &FormalGroupLaw, n: usize, trials: usize, seed: u64) -> anyhow::Result<Outcome> {
    let r = chain_map_check(g, n, trials, seed)?;
    let mut lines = vec![
        header(g),
        format!("n: {n}"),
        format!("trials: {trials}"),
        format!("seed: {seed}"),
    ];
    if let Some(c) = &r.counterexample {
        lines.push(format!("counterexample: {}", c.cochain));
        lines.push(format!("  phi(d c) = {}", c.phi_of_diff));
        lines.push(format!("  d'(phi c) = {}", c.diff_of_phi));
    }
    lines.push(format!("result: {}", if r.passed { "pass" } else { "fail" }));
    Ok(Outcome {
        lines,
        passed: r.passed,
        report: serde_json::to_value(&r)?,
    })
}

pub fn tals_graded(g: &FormalGroupLaw, max_degree: u32) -> anyhow::Result<Outcome> {
    let m = g.dim();
    let d = max_degree.min(g.trunc());
    let mut pairing = Pairing::new(g);
    let mut lines = vec![header(g)];
    let mut rows = Vec::new();
    let mut passed = true;
    for j in MultiIndex::up_to_degree(m, d).into_iter().skip(1) {
        let f = TruncatedSeries::monomial(m, d, j.clone(), Rational::from_integer(1.into()));
        let u = tals_with(&mut pairing, &f);
        let want = big(j.factorial());
        let diagonal = u.coefficient(&j);
        let lower_clean = u
            .terms()
            .all(|(k, c)| k == &j || k.total_degree() > j.total_degree() || num_traits_zero(c));
        let ok = diagonal == want && lower_clean;
        passed &= ok;
        lines.push(format!(
            "t^{:?}: diagonal {} (j! = {}) {}",
            j.exponents(),
            format_rational(&diagonal),
            want,
            if ok { "ok" } else { "MISMATCH" }
        ));
        rows.push(json!({
            "index": j.exponents(),
            "diagonal": format_rational(&diagonal),
            "factorial": want.to_string(),
            "higher_filtration_only": lower_clean,
        }));
    }
    lines.push(format!("result: {}", if passed { "pass" } else { "fail" }));
    Ok(Outcome {
        lines,
        report: json!({ "fgl": g.name(), "max_degree": d, "monomials": rows, "passed": passed }),
        passed,
    })
}

fn num_traits_zero(c: &Rational) -> bool {
    *c == Rational::from_integer(0.into())
}

pub fn padic_normality(
    g: &FormalGroupLaw,
    p: u32,
    h: u32,
    precision: u32,
    samples: usize,
    seed: u64,
) -> anyhow::Result<Outcome> {
    let r = normality_check(g, p, h, precision, samples, seed)?;
    let mut lines = vec![
        header(g),
        format!("p: {p}  h: {h}  N: {precision}  D: {}  seed: {seed}", r.degree),
    ];
    for v in &r.verdicts {
        let vals: Vec<String> = v.valuations.iter().map(ToString::to_string).collect();
        lines.push(format!(
            "sample {}: x={} y={} xyx^-1={} v=({}) {}",
            v.sample,
            v.x,
            v.y,
            v.conjugate,
            vals.join(", "),
            if v.in_subgroup { "ok" } else { "OUTSIDE" }
        ));
    }
    lines.push(format!("result: {}", if r.passed { "pass" } else { "fail" }));
    Ok(Outcome {
        lines,
        passed: r.passed,
        report: serde_json::to_value(&r)?,
    })
}

pub fn convergence(series: &str, m: usize, trunc: u32, p: u32, h: u32, levels: &[u32]) -> anyhow::Result<Outcome> {
    let f = if series == "exp" {
        if m != 1 {
            bail!("the exponential series has one variable");
        }
        TruncatedSeries::from_terms(
            1,
            trunc,
            (1..=trunc).map(|n| {
                (
                    MultiIndex::new(vec![n]),
                    Rational::from_integer(1.into()) / big(factorial(n)),
                )
            }),
        )?
    } else {
        TruncatedSeries::parse(series, m, trunc).context("parsing --series")?
    };
    let r = convergence_check(&f, p, h, levels)?;
    let mut lines = vec![format!("p: {p}  h: {h}  k0: {}  D: {}", r.k0, r.degree)];
    for v in &r.verdicts {
        let verdict = match v.verdict {
            Verdict::ConvergesCertified => "converges_certified",
            Verdict::NoCertificate => "no_certificate",
        };
        let mut line = format!("k={}: {verdict}", v.k);
        if let Some(w) = &v.divergence_witness {
            line.push_str(&format!("  divergence witness at degrees {w:?}"));
        }
        lines.push(line);
    }
    Ok(Outcome {
        lines,
        passed: true,
        report: serde_json::to_value(&r)?,
    })
}
