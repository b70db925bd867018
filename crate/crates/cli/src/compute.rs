use hopfcyc::algebra_kernel::{fmt_rational, CommPoly, Rational};
use hopfcyc::enveloping_dual::rho_map;
use hopfcyc::formal_diffeo::{delta_coords, DiffeoJet};
use hopfcyc::hopf_h1::{antipode, coproduct, delta, h_pow, twisted_antipode, HTensor};
use hopfcyc::lie_cohomology::{Coefficients, FiniteLieAlgebra, WeilComplex, WeilVariant};
use hopfcyc::matched_pair::{BElem, BicrossedHopf, Factorization, FiniteGroup};
use hopfcyc::rat;
use serde_json::{json, Value};

use crate::cli::{CoefficientChoice, ComputeArgs, ComputeTarget, Variant};
use crate::encode;
use crate::{CommandResult, Status};

const MAX_DELTA: u32 = 12;
const MAX_RHO: u32 = 8;

fn target_name(t: ComputeTarget) -> &'static str {
    match t {
        ComputeTarget::Coproduct => "coproduct",
        ComputeTarget::Antipode => "antipode",
        ComputeTarget::Rho => "rho",
        ComputeTarget::DeltaCoords => "delta-coords",
        ComputeTarget::Weil => "weil",
        ComputeTarget::Ce => "ce",
        ComputeTarget::Bicrossed => "bicrossed",
    }
}

fn need_n(n: Option<u32>, lo: u32, hi: u32) -> Result<u32, String> {
    let n = n.ok_or("--n is required")?;
    if n < lo || n > hi {
        return Err(format!("--n must be in {lo}..={hi}, got {n}"));
    }
    Ok(n)
}

fn success(target: &str, body: Value, summary: String, latex: Option<String>) -> CommandResult {
    CommandResult { status: Status::Success, payload: encode::document("compute", target, "success", body), summary, latex }
}

pub fn text_tensor(t: &HTensor) -> String {
    let mut out = String::new();
    for (k, c) in t {
        let legs: Vec<String> = k.iter().map(|m| m.to_string()).collect();
        let neg = num_traits::Signed::is_negative(c);
        let abs = num_traits::Signed::abs(c);
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if !num_traits::One::is_one(&abs) {
            out.push_str(&fmt_rational(&abs));
            out.push(' ');
        }
        out.push_str(&legs.join(" ⊗ "));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn poly_text(p: &CommPoly) -> String {
    p.display_with(|j| format!("x{j}")).to_string()
}

pub fn compute(args: &ComputeArgs) -> CommandResult {
    match run(args) {
        Ok(r) => r,
        Err(msg) => CommandResult::usage(msg),
    }
}

fn run(args: &ComputeArgs) -> Result<CommandResult, String> {
    let name = target_name(args.target);
    match args.target {
        ComputeTarget::Coproduct => {
            let n = need_n(args.n, 1, MAX_DELTA)?;
            let t = coproduct(&delta(n), 1);
            let body = json!({"input": format!("d{n}"), "value": encode::h_tensor(&t)});
            Ok(success(name, body, format!("Δ(δ{n}) = {}", text_tensor(&t)), Some(encode::latex_tensor(&t))))
        }
        ComputeTarget::Antipode => {
            let n = need_n(args.n, 1, MAX_DELTA)?;
            let (s, label) = if args.tilde { (twisted_antipode(&delta(n)), "S̃") } else { (antipode(&delta(n)), "S") };
            let body = json!({"input": format!("d{n}"), "twisted": args.tilde, "value": encode::h_element(&s)});
            Ok(success(name, body, format!("{label}(δ{n}) = {s}"), Some(encode::latex_h(&s))))
        }
        ComputeTarget::Rho => {
            let (h, input) = if args.schwarzian {
                if args.n.is_some() {
                    return Err("--schwarzian takes no --n".into());
                }
                (&delta(2) - &h_pow(&delta(1), 2).scale(&rat(1, 2)), "d2 - 1/2 d1^2".to_string())
            } else {
                let n = need_n(args.n, 1, MAX_RHO)?;
                (delta(n), format!("d{n}"))
            };
            let p = rho_map(&h, args.tilde).map_err(|e| e.to_string())?;
            let label = if args.tilde { "ρ̃" } else { "ρ" };
            let shown = if args.schwarzian { "δ2 - 1/2 δ1^2".to_string() } else { input.replace('d', "δ") };
            let body = json!({"input": input, "reversed": args.tilde, "value": encode::poly(&p)});
            Ok(success(name, body, format!("{label}({shown}) = {}", poly_text(&p)), Some(encode::latex_poly(&p))))
        }
        ComputeTarget::DeltaCoords => {
            let jet = args.jet.as_deref().ok_or("--jet is required")?;
            let coeffs = jet
                .split(',')
                .map(|c| c.trim().parse::<Rational>().map_err(|_| format!("bad jet coefficient `{}`", c.trim())))
                .collect::<Result<Vec<_>, _>>()?;
            let order = coeffs.len() + 1;
            let n = match args.n {
                Some(n) => need_n(Some(n), 1, order as u32 - 1)?,
                None => order as u32 - 1,
            };
            let p = DiffeoJet::from_higher(&coeffs, order);
            let vals = (1..=n).map(|k| delta_coords(&p, k)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
            let body = json!({"jet": p.series().coeffs().iter().map(encode::rational).collect::<Vec<_>>(),
                "value": vals.iter().map(encode::rational).collect::<Vec<_>>()});
            let summary = vals.iter().enumerate().map(|(k, v)| format!("δ{}(ψ) = {}", k + 1, fmt_rational(v))).collect::<Vec<_>>().join("\n");
            let latex = vals
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let sign = if num_traits::Signed::is_negative(v) { "-" } else { "" };
                    format!("\\delta_{{{}}}(\\psi) = {sign}{}", k + 1, encode::latex_rational(v))
                })
                .collect::<Vec<_>>()
                .join(", ");
            Ok(success(name, body, summary, Some(latex)))
        }
        ComputeTarget::Weil => {
            let n = need_n(args.n, 1, 4)? as usize;
            let variant = match args.variant {
                Variant::Wo => WeilVariant::WO,
                Variant::Wso => WeilVariant::WSO,
            };
            let vname = if variant == WeilVariant::WO { "WO" } else { "WSO" };
            let w = WeilComplex::new(n, variant).map_err(|e| e.to_string())?;
            let h = w.cohomology();
            let reps: Vec<Vec<String>> = h.representatives.iter().map(|rs| rs.iter().map(|r| weil_text(r)).collect()).collect();
            let mut summary = format!("{vname}({n}) cohomology\ndegree: {}\nbetti:  {}", row(0..h.betti.len()), row(h.betti.iter().copied()));
            for (k, rs) in reps.iter().enumerate() {
                if !rs.is_empty() {
                    summary.push_str(&format!("\nH^{k}: {}", rs.join(", ")));
                }
            }
            let body = json!({"n": n, "variant": vname, "betti": h.betti, "representatives": reps});
            let latex = format!(
                "\\begin{{tabular}}{{c|{}}}\n$k$ & {} \\\\\n\\hline\n$b_k$ & {} \\\\\n\\end{{tabular}}",
                "c".repeat(h.betti.len()),
                (0..h.betti.len()).map(|k| k.to_string()).collect::<Vec<_>>().join(" & "),
                h.betti.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" & ")
            );
            Ok(success(name, body, summary, Some(latex)))
        }
        ComputeTarget::Ce => {
            let l = parse_algebra(&args.algebra)?;
            let coeff = match args.coefficients {
                CoefficientChoice::Trivial => Coefficients::Trivial,
                CoefficientChoice::Character => Coefficients::Character,
            };
            let h = l.homology(coeff);
            let cycles: Vec<Vec<String>> = h.cycles.iter().map(|cs| cs.iter().map(|c| l.wedge_display(c)).collect()).collect();
            let cname = if coeff == Coefficients::Trivial { "trivial" } else { "character" };
            let mut summary = format!(
                "{} with {cname} coefficients\ndegree: {}\nbetti:  {}",
                args.algebra,
                row(0..h.betti.len()),
                row(h.betti.iter().copied())
            );
            for (k, cs) in cycles.iter().enumerate() {
                if !cs.is_empty() {
                    summary.push_str(&format!("\nH_{k}: {}", cs.join(", ")));
                }
            }
            let body = json!({"algebra": args.algebra, "generators": l.names(), "coefficients": cname, "betti": h.betti, "cycles": cycles});
            Ok(success(name, body, summary, None))
        }
        ComputeTarget::Bicrossed => bicrossed(args),
    }
}

fn row(xs: impl Iterator<Item = usize>) -> String {
    xs.map(|x| format!("{x:>3}")).collect::<Vec<_>>().join("")
}

fn weil_text(e: &hopfcyc::lie_cohomology::WeilElement) -> String {
    let mut out = String::new();
    for (m, c) in e {
        let neg = num_traits::Signed::is_negative(c);
        let abs = num_traits::Signed::abs(c);
        if !out.is_empty() {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        if !num_traits::One::is_one(&abs) {
            out.push_str(&fmt_rational(&abs));
            out.push(' ');
        }
        out.push_str(&m.name());
    }
    out
}

fn parse_algebra(spec: &str) -> Result<FiniteLieAlgebra, String> {
    if spec == "affine" {
        return Ok(FiniteLieAlgebra::affine());
    }
    if let Some(k) = spec.strip_prefix("abelian:") {
        let k: usize = k.parse().map_err(|_| format!("bad dimension in `{spec}`"))?;
        if k > 8 {
            return Err("abelian dimension must be at most 8".into());
        }
        return Ok(FiniteLieAlgebra::abelian(k));
    }
    if let Some(r) = spec.strip_prefix("witt:") {
        let (lo, hi) = r.split_once("..").ok_or_else(|| format!("expected witt:LO..HI, got `{spec}`"))?;
        let lo: i32 = lo.parse().map_err(|_| format!("bad bound in `{spec}`"))?;
        let hi: i32 = hi.parse().map_err(|_| format!("bad bound in `{spec}`"))?;
        if lo < 0 || hi < lo || hi - lo > 7 {
            return Err("witt:LO..HI needs 0 ≤ LO ≤ HI and at most 8 generators".into());
        }
        return Ok(FiniteLieAlgebra::truncated_vector_fields(lo, hi));
    }
    Err(format!("unknown algebra `{spec}`; use affine, abelian:K or witt:LO..HI"))
}

fn index_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| format!("bad element index `{}`", x.trim()))).collect()
}

fn factorization(args: &ComputeArgs) -> Result<Factorization, String> {
    match (&args.group, &args.group_file) {
        (Some(name), None) => {
            if args.g1.is_some() || args.g2.is_some() {
                return Err("--g1/--g2 apply to --group-file only".into());
            }
            Factorization::builtin(name).map_err(|e| e.to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let g = FiniteGroup::from_text(&text).map_err(|e| e.to_string())?;
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "file".into());
            match (&args.g1, &args.g2) {
                (None, None) => Ok(Factorization::group_only(g, &label)),
                (Some(a), Some(b)) => Factorization::new(g, index_list(a)?, index_list(b)?, &label).map_err(|e| e.to_string()),
                _ => Err("give both --g1 and --g2, or neither".into()),
            }
        }
        _ => Err("give exactly one of --group or --group-file".into()),
    }
}

fn bicrossed(args: &ComputeArgs) -> Result<CommandResult, String> {
    let f = factorization(args)?;
    if f.group().order() > 24 {
        return Err(format!("groups of order at most 24 are supported, got {}", f.group().order()));
    }
    let label = f.label().to_string();
    let h = BicrossedHopf::new(f);
    let d = h.dim();
    let names: Vec<String> = (0..d).map(|i| h.basis_name(i)).collect();
    let axioms = h.verify_axioms();
    let antipode: Vec<String> = (0..d).map(|i| h.basis_name(h.antipode_basis(i))).collect();
    let counit: Vec<Value> = (0..d).map(|i| encode::rational(&h.counit_basis(i))).collect();
    let modular = h.modular_character_basis().map(|v| v.iter().map(encode::rational).collect::<Vec<_>>());
    let fz = h.factorization();
    let mut summary = format!(
        "H({label}): |G| = {}, |G1| = {}, |G2| = {}, dim = {d}\naxioms: {}",
        fz.group().order(),
        fz.n1(),
        fz.n2(),
        match &axioms {
            Ok(()) => "pass".to_string(),
            Err(e) => format!("FAIL ({e})"),
        }
    );
    for i in 0..d {
        summary.push_str(&format!("\nS({}) = {}   ε = {}", names[i], antipode[i], fmt_rational(&h.counit_basis(i))));
    }
    let unit: BElem = h.unit();
    summary.push_str(&format!("\nunit = {}", unit.iter().map(|(k, _)| names[*k].clone()).collect::<Vec<_>>().join(" + ")));
    let ok = axioms.is_ok();
    let body = json!({
        "label": label,
        "group_order": fz.group().order(),
        "g1": fz.g1(),
        "g2": fz.g2(),
        "dim": d,
        "basis": names,
        "axioms": if ok { Value::from("pass") } else { Value::from(axioms.as_ref().unwrap_err().to_string()) },
        "antipode": antipode,
        "counit": counit,
        "modular_character": modular.unwrap_or_default(),
    });
    let status = if ok { "success" } else { "invariant-violation" };
    Ok(CommandResult {
        status: if ok { Status::Success } else { Status::Violation },
        payload: encode::document("compute", "bicrossed", status, body),
        summary,
        latex: None,
    })
}
