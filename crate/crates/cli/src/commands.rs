//! Dispatch from parsed arguments to the core procedures, producing report
//! documents.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use wlskit_core::abelian::{subgroup_type_p, ExponentValue};
use wlskit_core::complexes::{
    degeneracy_bound, degenerates_at_e2_q, page_inclusion, spectral_pages, verify_tensoring_q,
    FilteredComplex, SpectralPage,
};
use wlskit_core::error::{Error, Result};
use wlskit_core::json as wjson;
use wlskit_core::matrix::IntMatrix;
use wlskit_core::rings::{
    betti_report, c3, delta_d, discsym_bound, find_wls_class, is_wls_class, product_ring,
    stabilizer_check, tau, GradedRing,
};
use wlskit_core::roots::{
    automorphism_order, find_root_bruteforce, finite_order, is_quasi_unipotent, verify_root_binomial,
    InfiniteWitness, OrderResult, QuasiUnipotence,
};

use crate::{Cli, Command, GroupCmd, MatrixCmd, RingCmd, SsCmd};

pub fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Group(g) => format!(
            "group {}",
            match g {
                GroupCmd::Snf(_) => "snf",
                GroupCmd::Canon(_) => "canon",
                GroupCmd::Exp(_) => "exp",
                GroupCmd::Autorder(_) => "autorder",
                GroupCmd::Subtype { .. } => "subtype",
            }
        ),
        Command::Matrix(m) => format!(
            "matrix {}",
            match m {
                MatrixCmd::Order(_) => "order",
                MatrixCmd::Quasiunipotent(_) => "quasiunipotent",
                MatrixCmd::Root { .. } => "root",
                MatrixCmd::Binomial { .. } => "binomial",
            }
        ),
        Command::Ss(s) => format!(
            "ss {}",
            match s {
                SsCmd::Pages(_) => "pages",
                SsCmd::Tensorq(_) => "tensorq",
                SsCmd::DegenerateQ(_) => "degenerate-q",
                SsCmd::Inclusion { .. } => "inclusion",
                SsCmd::Bound { .. } => "bound",
            }
        ),
        Command::Ring(r) => format!(
            "ring {}",
            match r {
                RingCmd::Validate(_) => "validate",
                RingCmd::Wls { .. } => "wls",
                RingCmd::WlsFind { .. } => "wls-find",
                RingCmd::Tau(_) => "tau",
                RingCmd::Delta { .. } => "delta",
                RingCmd::C3 { .. } => "c3",
                RingCmd::DiscsymBound(_) => "discsym-bound",
                RingCmd::Product { .. } => "product",
                RingCmd::Betti(_) => "betti",
                RingCmd::Stabilizer { .. } => "stabilizer",
            }
        ),
    }
}

fn load(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    wjson::parse(&text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<IntMatrix> {
    let doc = load(path)?;
    wjson::untag(&doc, "matrix")?;
    wjson::matrix_from_body(&doc, "$")
}

fn load_filtered(path: &Path) -> Result<FilteredComplex> {
    let doc = load(path)?;
    wjson::untag(&doc, "filtered-complex")?;
    wjson::filtered_from_body(&doc, "$")
}

fn load_ring(path: &Path) -> Result<GradedRing> {
    let doc = load(path)?;
    wjson::untag(&doc, "ring")?;
    wjson::ring_from_body(&doc, "$")
}

fn parse_array(text: &str, what: &str) -> Result<Vec<Value>> {
    let v = wjson::parse(text)?;
    v.as_array()
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("--{what} must be a JSON array")))
}

fn parse_rationals(text: &str, what: &str) -> Result<Vec<num_rational::BigRational>> {
    parse_array(text, what)?
        .iter()
        .enumerate()
        .map(|(i, v)| wjson::rational_from_json(v, &format!("--{what}[{i}]")))
        .collect()
}

fn parse_bigints(text: &str, what: &str) -> Result<Vec<BigInt>> {
    parse_array(text, what)?
        .iter()
        .enumerate()
        .map(|(i, v)| wjson::bigint_from_json(v, &format!("--{what}[{i}]")))
        .collect()
}

fn parse_bigint_flag(text: &str, what: &str) -> Result<BigInt> {
    BigInt::from_str(text.trim())
        .map_err(|_| Error::Invalid(format!("--{what} must be a decimal integer")))
}

fn exponent_json(e: &ExponentValue) -> Value {
    match e {
        ExponentValue::Finite(n) => wjson::bigint_to_json(n),
        ExponentValue::Infinite => json!("infinite"),
    }
}

fn order_json(fields: &mut Map<String, Value>, order: &OrderResult) {
    match order {
        OrderResult::Finite(e) => {
            fields.insert("finite".into(), json!(true));
            fields.insert("order".into(), json!(e));
        }
        OrderResult::Infinite(w) => {
            fields.insert("finite".into(), json!(false));
            let witness = match w {
                InfiniteWitness::NonCyclotomicFactor(p) => json!({
                    "kind": "non-cyclotomic-factor",
                    "factor": p.to_string(),
                    "coefficients": p.coeffs().iter().map(wjson::bigint_to_json).collect::<Vec<_>>(),
                }),
                InfiniteWitness::UnipotentPart { exponent, vector } => json!({
                    "kind": "unipotent-part",
                    "exponent": exponent,
                    "vector": vector.iter().map(wjson::bigint_to_json).collect::<Vec<_>>(),
                }),
            };
            fields.insert("witness".into(), witness);
        }
    }
}

fn pages_json(pages: &[SpectralPage]) -> Value {
    let rendered: Vec<Value> = pages
        .iter()
        .map(|page| {
            let entries: Vec<Value> = page
                .entries
                .values()
                .map(|e| {
                    let (rank, torsion) = e.group.canonical_form();
                    json!({
                        "p": e.p,
                        "q": e.q,
                        "rank": rank,
                        "torsion": torsion.iter().map(wjson::bigint_to_json).collect::<Vec<_>>(),
                        "d": wjson::matrix_body(e.d.matrix()),
                    })
                })
                .collect();
            json!({ "r": page.r, "entries": entries })
        })
        .collect();
    Value::Array(rendered)
}

/// First differential on pages r >= 2 that is nonzero modulo torsion, as a
/// (r, p, q) locus.
fn first_rationally_nonzero_d(pages: &[SpectralPage]) -> Option<(usize, i64, i64)> {
    for page in pages {
        for e in page.entries.values() {
            if !e.d.lattice_part().matrix().is_zero() {
                return Some((page.r, e.p, e.q));
            }
        }
    }
    None
}

pub fn execute(cli: &Cli) -> Result<Value> {
    let name = command_name(&cli.command);
    let mut fields = Map::new();
    match &cli.command {
        Command::Group(cmd) => match cmd {
            GroupCmd::Snf(input) => {
                let m = load_matrix(&input.input)?;
                let snf = m.smith_normal_form();
                fields.insert(
                    "diagonal".into(),
                    Value::Array(snf.diagonal().iter().map(wjson::bigint_to_json).collect()),
                );
                fields.insert("d".into(), wjson::matrix_body(&snf.d));
                fields.insert("u".into(), wjson::matrix_body(&snf.u));
                fields.insert("v".into(), wjson::matrix_body(&snf.v));
                fields.insert(
                    "unimodular".into(),
                    json!(snf.u.is_unimodular() && snf.v.is_unimodular()),
                );
            }
            GroupCmd::Canon(input) => {
                let doc = load(&input.input)?;
                wjson::untag(&doc, "group")?;
                let g = wjson::group_from_body(&doc, "$")?;
                let (rank, torsion) = g.canonical_form();
                fields.insert("rank".into(), json!(rank));
                fields.insert(
                    "torsion".into(),
                    Value::Array(torsion.iter().map(wjson::bigint_to_json).collect()),
                );
            }
            GroupCmd::Exp(input) => {
                let doc = load(&input.input)?;
                wjson::untag(&doc, "group")?;
                let g = wjson::group_from_body(&doc, "$")?;
                fields.insert("exponent".into(), exponent_json(&g.exponent()));
            }
            GroupCmd::Autorder(input) => {
                let doc = load(&input.input)?;
                wjson::untag(&doc, "morphism")?;
                let f = wjson::morphism_from_body(&doc, "$")?;
                order_json(&mut fields, &automorphism_order(&f)?);
            }
            GroupCmd::Subtype { input, p, d, m } => {
                let gens = load_matrix(&input.input)?;
                let columns: Vec<Vec<BigInt>> =
                    (0..gens.cols()).map(|j| gens.column(j)).collect();
                let ty = subgroup_type_p(*p, *d, *m, &columns)?;
                fields.insert("type".into(), json!(ty));
            }
        },
        Command::Matrix(cmd) => match cmd {
            MatrixCmd::Order(input) => {
                let m = load_matrix(&input.input)?;
                order_json(&mut fields, &finite_order(&m)?);
            }
            MatrixCmd::Quasiunipotent(input) => {
                let m = load_matrix(&input.input)?;
                match is_quasi_unipotent(&m)? {
                    QuasiUnipotence::Yes { exponent, cyclotomic_orders } => {
                        fields.insert("quasi_unipotent".into(), json!(true));
                        fields.insert("exponent".into(), json!(exponent));
                        fields.insert("cyclotomic_orders".into(), json!(cyclotomic_orders));
                    }
                    QuasiUnipotence::No { residual } => {
                        fields.insert("quasi_unipotent".into(), json!(false));
                        fields.insert("residual".into(), json!(residual.to_string()));
                    }
                }
            }
            MatrixCmd::Root { input, r, bound } => {
                let a = load_matrix(&input.input)?;
                match find_root_bruteforce(&a, *r, *bound, cli.budget)? {
                    Some(b) => {
                        fields.insert("found".into(), json!(true));
                        fields.insert("root".into(), wjson::matrix_body(&b));
                    }
                    None => {
                        fields.insert("found".into(), json!(false));
                        fields.insert("entry_bound".into(), json!(bound));
                    }
                }
            }
            MatrixCmd::Binomial { input, s } => {
                let b = load_matrix(&input.input)?;
                let rep = verify_root_binomial(&b, *s)?;
                fields.insert("forward_holds".into(), json!(rep.forward_holds));
                fields.insert(
                    "backward_coefficients".into(),
                    Value::Array(
                        rep.backward_coefficients.iter().map(wjson::rational_to_json).collect(),
                    ),
                );
                fields.insert("backward_holds".into(), json!(rep.backward_holds));
                fields.insert("all_hold".into(), json!(rep.all_hold()));
            }
        },
        Command::Ss(cmd) => match cmd {
            SsCmd::Pages(input) => {
                let fc = load_filtered(&input.input)?;
                fields.insert("pages".into(), pages_json(&spectral_pages(&fc)?));
            }
            SsCmd::Tensorq(input) => {
                let fc = load_filtered(&input.input)?;
                let rep = verify_tensoring_q(&fc)?;
                fields.insert("ok".into(), json!(rep.ok));
                if let Some((r, p, q, rank, dim)) = rep.first_discrepancy {
                    fields.insert(
                        "first_discrepancy".into(),
                        json!({ "r": r, "p": p, "q": q, "integral_rank": rank, "rational_dim": dim }),
                    );
                }
            }
            SsCmd::DegenerateQ(input) => {
                let fc = load_filtered(&input.input)?;
                let degenerate = degenerates_at_e2_q(&fc)?;
                fields.insert("degenerate".into(), json!(degenerate));
                if !degenerate {
                    let pages = spectral_pages(&fc)?;
                    if let Some((r, p, q)) = first_rationally_nonzero_d(&pages) {
                        fields.insert(
                            "offending_differential".into(),
                            json!({ "r": r, "p": p, "q": q }),
                        );
                    }
                }
            }
            SsCmd::Inclusion { input, page } => {
                let fc = load_filtered(&input.input)?;
                let incs = page_inclusion(&fc, *page)?;
                let rendered: Vec<Value> = incs
                    .iter()
                    .map(|inc| {
                        json!({
                            "p": inc.p,
                            "q": inc.q,
                            "exponent": exponent_json(&inc.exponent),
                            "bound": wjson::bigint_to_json(&inc.bound),
                            "bound_e2": wjson::bigint_to_json(&inc.bound_e2),
                            "holds": inc.holds,
                        })
                    })
                    .collect();
                fields.insert("page".into(), json!(page));
                fields.insert("inclusions".into(), Value::Array(rendered));
                fields.insert("all_hold".into(), json!(incs.iter().all(|i| i.holds)));
            }
            SsCmd::Bound { n, p, q, k, iota_high, iota_3, w } => {
                let n = parse_bigint_flag(n, "n")?;
                let ih = parse_bigint_flag(iota_high, "iota-high")?;
                let i3 = parse_bigint_flag(iota_3, "iota3")?;
                let w = parse_bigint_flag(w, "w")?;
                let b = degeneracy_bound(&n, *p, *q, *k, &ih, &i3, &w)?;
                fields.insert("lambda".into(), wjson::bigint_to_json(&b.lambda));
                fields.insert("mu".into(), wjson::bigint_to_json(&b.mu));
                fields.insert("capital_lambda".into(), wjson::bigint_to_json(&b.capital_lambda));
                fields.insert("lower_bound_ok".into(), json!(b.lower_bound_ok));
            }
        },
        Command::Ring(cmd) => match cmd {
            RingCmd::Validate(input) => {
                let ring = load_ring(&input.input)?;
                let rep = ring.validate();
                fields.insert("valid".into(), json!(rep.is_valid()));
                fields.insert("violations".into(), json!(rep.violations));
            }
            RingCmd::Wls { input, omega } => {
                let ring = load_ring(&input.input)?;
                let omega = parse_rationals(omega, "omega")?;
                let verdict = is_wls_class(&ring, &omega)?;
                fields.insert("is_wls".into(), json!(verdict.is_wls));
                fields.insert("w1".into(), json!(verdict.w1));
                if let Some(w) = &verdict.w1_witness {
                    fields.insert(
                        "w1_witness".into(),
                        json!({ "r": w.r, "k": w.k, "classes": w.classes }),
                    );
                }
                fields.insert("w2".into(), json!(verdict.w2));
                if let Some(alpha) = &verdict.w2_witness {
                    fields.insert(
                        "w2_witness".into(),
                        Value::Array(alpha.iter().map(wjson::rational_to_json).collect()),
                    );
                }
                if let Some(pd) = verdict.pd_criterion {
                    fields.insert("pd_criterion".into(), json!(pd));
                }
            }
            RingCmd::WlsFind { input, attempts, height } => {
                let ring = load_ring(&input.input)?;
                match find_wls_class(&ring, cli.seed, *attempts, *height)? {
                    Some(found) => {
                        fields.insert("found".into(), json!(true));
                        fields.insert(
                            "omega".into(),
                            Value::Array(found.omega.iter().map(wjson::rational_to_json).collect()),
                        );
                        fields.insert(
                            "lambda".into(),
                            Value::Array(found.lambda.iter().map(wjson::bigint_to_json).collect()),
                        );
                        fields.insert("scale".into(), wjson::bigint_to_json(&found.scale));
                    }
                    None => {
                        fields.insert("found".into(), json!(false));
                    }
                }
                fields.insert("seed".into(), json!(cli.seed));
            }
            RingCmd::Tau(input) => {
                let ring = load_ring(&input.input)?;
                ring.require_valid()?;
                let rep = tau(&ring);
                fields.insert("tau".into(), json!(rep.tau));
                fields.insert("witness".into(), json!(rep.witness));
            }
            RingCmd::Delta { input, lambda, d } => {
                let ring = load_ring(&input.input)?;
                ring.require_valid()?;
                let lambda = parse_bigints(lambda, "lambda")?;
                fields.insert("degree".into(), json!(d));
                fields.insert("delta".into(), exponent_json(&delta_d(&ring, &lambda, *d)?));
            }
            RingCmd::C3 { input, lambda } => {
                let ring = load_ring(&input.input)?;
                ring.require_valid()?;
                let lambda = match lambda {
                    Some(text) => parse_bigints(text, "lambda")?,
                    None => find_wls_class(&ring, cli.seed, 500, 10)?
                        .map(|f| f.lambda)
                        .ok_or_else(|| {
                            Error::Precondition(
                                "no WLS class found; pass --lambda explicitly".into(),
                            )
                        })?,
                };
                fields.insert(
                    "lambda".into(),
                    Value::Array(lambda.iter().map(wjson::bigint_to_json).collect()),
                );
                fields.insert("c3".into(), wjson::bigint_to_json(&c3(&ring, &lambda)?));
            }
            RingCmd::DiscsymBound(input) => {
                let ring = load_ring(&input.input)?;
                ring.require_valid()?;
                let t = tau(&ring);
                fields.insert("n".into(), json!(ring.top_degree()));
                fields.insert("tau".into(), json!(t.tau));
                fields.insert("bound".into(), json!(discsym_bound(ring.top_degree(), t.tau)));
            }
            RingCmd::Product { left, right } => {
                let a = load_ring(left)?;
                let b = load_ring(right)?;
                let p = product_ring(&a, &b)?;
                // the report carries a complete ring document, reusable as input
                let body = wjson::ring_body(&p.ring);
                let doc = wjson::tagged(
                    "ring",
                    body.as_object().expect("ring body is an object").clone(),
                );
                fields.insert("ring".into(), doc);
            }
            RingCmd::Betti(input) => {
                let ring = load_ring(&input.input)?;
                let rep = betti_report(&ring)?;
                fields.insert("betti".into(), json!(rep.betti));
                fields.insert("total".into(), json!(rep.total));
                fields.insert("tau".into(), json!(rep.tau));
                fields.insert("sum_bound_holds".into(), json!(rep.sum_bound_holds));
                match &rep.per_degree {
                    Some(bounds) => {
                        let rendered: Vec<Value> = bounds
                            .iter()
                            .map(|b| {
                                json!({
                                    "degree": b.degree,
                                    "betti": b.betti,
                                    "lower_bound": b.lower_bound,
                                    "witness_rank": b.witness_rank,
                                    "holds": b.holds,
                                })
                            })
                            .collect();
                        fields.insert("per_degree".into(), Value::Array(rendered));
                    }
                    None => {
                        fields.insert(
                            "notice".into(),
                            json!("per-degree bounds skipped: Poincare duality fails"),
                        );
                    }
                }
            }
            RingCmd::Stabilizer { c3: c, n, g, gx } => {
                let c = parse_bigint_flag(c, "c3")?;
                let g = parse_bigint_flag(g, "g")?;
                let gx = parse_bigint_flag(gx, "gx")?;
                fields.insert("holds".into(), json!(stabilizer_check(&c, *n, &g, &gx)?));
            }
        },
    }
    Ok(crate::output::report(&name, fields))
}
