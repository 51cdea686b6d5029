use std::collections::BTreeMap;
use std::fmt::Write;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Value};
use wedgecalc::{
    all_shifted, bbcg, closed_form_skeleton, decompose, decompose_any_order, decompose_gluing,
    decompose_wedge_construction, find_shifted_order, moment_angle, reduced_homology, shift_witness, specialize,
    BbcgOptions, Error, Face, Label, SimplicialComplex, SphereAssignment, Validity, VertexOrder, Wedge,
};

use crate::cli::{Input, Search};
use crate::error::CliError;

/// Rendered output of one subcommand.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub exit: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, exit: 0 }
    }
}

const BBCG_HINT: &str = "run `wedgecalc bbcg` for the suspended wedge, which needs no shifted order";

pub fn read_complex(input: &Input) -> Result<SimplicialComplex, CliError> {
    match (&input.input, &input.spec) {
        (_, Some(spec)) => Ok(SimplicialComplex::parse(spec)?),
        (Some(path), None) => load(path),
        (None, None) => unreachable!("clap requires one input source"),
    }
}

pub fn load(path: &Path) -> Result<SimplicialComplex, CliError> {
    let mut text = String::new();
    let io = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(drop)
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    io.map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    SimplicialComplex::parse(&text).map_err(|error| match error {
        Error::Parse { message } => Error::Parse {
            message: format!("{}: {message}", path.display()),
        }
        .into(),
        other => other.into(),
    })
}

fn parse_list<T: FromStr>(what: &str, s: &str) -> Result<Vec<T>, Error>
where
    T::Err: std::fmt::Display,
{
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse().map_err(|e| Error::Parse {
                message: format!("{what}: {t:?}: {e}"),
            })
        })
        .collect()
}

/// One value per vertex, listed in vertex order.
fn per_vertex<T: FromStr>(k: &SimplicialComplex, what: &str, s: &str) -> Result<BTreeMap<Label, T>, Error>
where
    T::Err: std::fmt::Display,
{
    let values: Vec<T> = parse_list(what, s)?;
    if values.len() != k.num_vertices() {
        return Err(Error::Parse {
            message: format!("{what}: expected {} values, got {}", k.num_vertices(), values.len()),
        });
    }
    Ok(k.vertices().iter().copied().zip(values).collect())
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn check_shifted(input: &Input, order: Option<&str>, search: &Search) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    if search.search {
        let orders = factorial(k.num_vertices());
        return Ok(match find_shifted_order(&k, search.max_perms)? {
            Some(o) => Report::ok(
                format!("shifted under order {o}\n"),
                json!({ "shifted": true, "order": o.ranked(), "orders": orders.to_string() }),
            ),
            None => Report::ok(
                format!("not shifted under any of {orders} orders\n"),
                json!({ "shifted": false, "order": null, "orders": orders.to_string() }),
            ),
        });
    }
    let order = match order {
        Some(s) => VertexOrder::new(parse_list("order", s)?)?,
        None => VertexOrder::natural(&k),
    };
    Ok(match shift_witness(&k, &order)? {
        None => Report::ok(
            format!("shifted under order {order}\n"),
            json!({ "shifted": true, "order": order.ranked() }),
        ),
        Some(w) => Report::ok(
            format!(
                "not shifted under order {order}: {} is a face but {} is not (replace {} by {})\n",
                w.face,
                w.shifted_face(),
                w.removed,
                w.inserted
            ),
            json!({ "shifted": false, "order": order.ranked(), "witness": w }),
        ),
    })
}

pub fn decompose_cmd(input: &Input, trace: bool, check_bbcg: bool, search: &Search) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    let (result, order) = if search.search {
        decompose_any_order::<BigUint>(&k, search.max_perms).map_err(|e| match e {
            Error::NoShiftedOrder => CliError::hinted(e, BBCG_HINT),
            e => e.into(),
        })?
    } else {
        let d = decompose::<BigUint>(&k).map_err(|e| match e {
            Error::NotShifted { .. } => {
                CliError::hinted(e, format!("retry with --search to try other vertex orders, or {BBCG_HINT}"))
            }
            e => e.into(),
        })?;
        (d, VertexOrder::natural(&k))
    };
    let mut text = String::new();
    let mut out = json!({
        "decomposition": result.decomposition,
        "order": order.ranked(),
    });
    if trace {
        text.push_str(&result.trace.render_text());
        out["trace"] = json!(result.trace);
        writeln!(text, "Result: {}", result.decomposition).unwrap();
    } else {
        writeln!(text, "{}", result.decomposition).unwrap();
    }
    let mut exit = 0;
    if check_bbcg {
        let b = bbcg::<BigUint>(&k, &BbcgOptions::default())?;
        let agrees = b.decomposition == result.decomposition;
        if agrees {
            writeln!(text, "bbcg: agrees").unwrap();
        } else {
            writeln!(text, "bbcg: DIFFERS: {}", b.decomposition).unwrap();
            exit = 1;
        }
        out["bbcg"] = json!({ "agrees": agrees, "decomposition": b.decomposition });
    }
    Ok(Report { text, json: out, exit })
}

pub fn bbcg_cmd(input: &Input, show: bool, opts: BbcgOptions) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    let opts = BbcgOptions {
        keep_profiles: show,
        ..opts
    };
    let b = bbcg::<BigUint>(&k, &opts)?;
    let mut text = format!(
        "{}\nvalidity: {}\nshiftedness: {}\n",
        b.decomposition,
        b.validity.as_str(),
        b.shifted.describe()
    );
    if b.torsion_present() {
        let subsets: Vec<String> = b.torsion_subsets.iter().map(|s| braces(s)).collect();
        writeln!(text, "torsion in: {}", subsets.join(" ")).unwrap();
    }
    if b.validity == Validity::SuspendedOnly {
        writeln!(text, "note: valid after one suspension only").unwrap();
    }
    let mut out = json!({
        "decomposition": b.decomposition,
        "validity": b.validity,
        "shifted": b.shifted.describe(),
        "torsion_present": b.torsion_present(),
        "torsion_subsets": b.torsion_subsets,
    });
    if show {
        let mut profiles = Vec::new();
        for s in &b.profiles {
            writeln!(text, "  {}: {}", braces(&s.subset), s.profile).unwrap();
            profiles.push(json!({ "subset": s.subset, "homology": s.profile.to_json() }));
        }
        out["subcomplexes"] = Value::Array(profiles);
    }
    Ok(Report::ok(text, out))
}

fn braces(labels: &[Label]) -> String {
    let parts: Vec<String> = labels.iter().map(Label::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn homology(input: &Input) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    let h = reduced_homology(&k)?;
    Ok(Report::ok(format!("{h}\n"), h.to_json()))
}

pub fn glue(left: &Path, right: &Path, tau: &str, trace: bool, max_perms: u64) -> Result<Report, CliError> {
    let k1 = load(left)?;
    let k2 = load(right)?;
    let tau = Face::new(parse_list("tau", tau)?)?;
    let g = decompose_gluing::<BigUint>(&k1, &k2, &tau, max_perms)?;
    let mut text = String::new();
    if trace {
        text.push_str(&g.trace.render_text());
    }
    writeln!(text, "{}", g.decomposition).unwrap();
    let mut out = json!({ "complex": g.complex.to_spec(), "decomposition": g.decomposition });
    if trace {
        out["trace"] = json!(g.trace);
    }
    Ok(Report::ok(text, out))
}

pub fn wedge(input: &Input, copies: &str, max_perms: u64) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    let copies = per_vertex::<usize>(&k, "J", copies)?;
    let w = decompose_wedge_construction::<BigUint>(&k, &copies, max_perms)?;
    let text = format!(
        "{}\norder: {}\n{}\n",
        w.wedge.complex, w.order, w.decomposition
    );
    let out = json!({
        "complex": w.wedge.complex.to_spec(),
        "copies": w.wedge.copies,
        "order": w.order.ranked(),
        "decomposition": w.decomposition,
    });
    Ok(Report::ok(text, out))
}

pub fn skeleton(n: u32, k: i64) -> Result<Report, CliError> {
    let labels: Vec<Label> = (1..=n).collect();
    let complex = SimplicialComplex::skeleton(labels.iter().copied(), k)?;
    let closed: Wedge = closed_form_skeleton(&labels, k)?;
    let d: Wedge = decompose(&complex)?.decomposition;
    let agrees = d == closed;
    let mut text = format!("{d}\n");
    if !agrees {
        writeln!(text, "closed form DIFFERS: {closed}").unwrap();
    }
    Ok(Report {
        text,
        json: json!({ "decomposition": d, "closed_form_agrees": agrees }),
        exit: if agrees { 0 } else { 1 },
    })
}

pub fn moment_angle_cmd(input: &Input, ack: bool, max_perms: u64) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    let opts = BbcgOptions {
        perm_limit: max_perms,
        ..BbcgOptions::default()
    };
    let z = moment_angle::<BigUint>(&k, ack, &opts).map_err(|e| match e {
        Error::NoShiftedOrder | Error::NotShifted { .. } | Error::TooManyVertices { .. } => CliError::hinted(
            e,
            "pass --suspended-only-ack to accept the wedge that holds after one suspension",
        ),
        e => e.into(),
    })?;
    let mut text = format!(
        "{}\nPoincaré polynomial: {}\nvalidity: {}\n",
        z.spheres,
        z.poincare(),
        z.validity.as_str()
    );
    if let Some(o) = &z.order {
        writeln!(text, "order: {o}").unwrap();
    }
    Ok(Report::ok(text, z.to_json()))
}

pub fn specialize_cmd(input: &Input, dims: &str, max_perms: u64) -> Result<Report, CliError> {
    let k = read_complex(input)?;
    let dims = SphereAssignment::new(per_vertex(&k, "dims", dims)?)?;
    let (d, _) = decompose_any_order::<BigUint>(&k, max_perms).map_err(|e| match e {
        Error::NoShiftedOrder => CliError::hinted(e, BBCG_HINT),
        e => e.into(),
    })?;
    let w = specialize(&d.decomposition, &dims)?;
    let text = format!("{w}\nPoincaré polynomial: {}\n", w.poincare());
    let out = json!({
        "spheres": w.to_json(),
        "poincare": w.poincare().to_string(),
        "validity": Validity::Exact,
    });
    Ok(Report::ok(text, out))
}

pub fn verify(max_n: u32) -> Result<Report, CliError> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 1..=max_n {
        let all = all_shifted(n)?;
        let mut bad = 0;
        for k in &all {
            let d: Wedge = decompose(k)?.decomposition;
            let b = bbcg::<BigUint>(k, &BbcgOptions::default())?.decomposition;
            if d != b {
                bad += 1;
                failures.push(json!({ "complex": k.to_spec(), "decompose": d, "bbcg": b }));
                writeln!(text, "MISMATCH {k}: decompose {d}, bbcg {b}").unwrap();
            }
        }
        total += all.len();
        writeln!(text, "n={n}: {} complexes, {} agree", all.len(), all.len() - bad).unwrap();
        rows.push(json!({ "n": n, "complexes": all.len(), "agree": all.len() - bad }));
    }
    let ok = failures.is_empty();
    writeln!(
        text,
        "{}: {total} complexes",
        if ok { "verified" } else { "FAILED" }
    )
    .unwrap();
    Ok(Report {
        text,
        json: json!({ "ok": ok, "total": total, "by_size": rows, "failures": failures }),
        exit: if ok { 0 } else { 1 },
    })
}
