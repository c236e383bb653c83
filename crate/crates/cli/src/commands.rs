//! Single-object commands. Each returns the rendered output or an input
//! error; the binary maps these onto exit codes.

use nclosed_core::algebra::{all_subgroups, generated_subgroup, index, is_normal_classic};
use nclosed_core::coset::{analyze_coset, closedness_spectrum, power_coset_closedness};
use nclosed_core::nclosed::{is_n_closed, n_closed_witness};
use nclosed_core::parse::{parse_element, parse_subset_spec};
use nclosed_core::{Element, Error, FiniteGroup, GSubset, Magma};
use serde_json::{json, Value};

use crate::corpus::{CorpusEntry, InputError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Spectra printed by `coset` are checked against the engine up to here
/// unless `--max-n` says otherwise.
pub const DEFAULT_SPECTRUM_CHECK: usize = 20;

pub fn load_group(spec: &str) -> Result<FiniteGroup, InputError> {
    Ok(CorpusEntry::parse(spec)?.group)
}

fn subset_arg(text: &str, g: &FiniteGroup) -> Result<GSubset, InputError> {
    parse_subset_spec(text, g).map_err(|error| InputError::Parse { input: text.into(), error })
}

fn element_arg(text: &str, g: &FiniteGroup) -> Result<Element, InputError> {
    let x = parse_element(text, g).map_err(|error| InputError::Parse { input: text.into(), error })?;
    Ok(g.element(x)?)
}

fn labels(g: &FiniteGroup, d: &GSubset) -> Vec<String> {
    d.labels(g).into_iter().map(String::from).collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

pub fn cmd_check(group: &str, subset: &str, n: usize, format: Format) -> Result<String, InputError> {
    let g = load_group(group)?;
    let d = subset_arg(subset, &g)?;
    if n < 2 {
        return Err(Error::InvalidArity { n, min: 2 }.into());
    }
    let closed = is_n_closed(&g, &d, n)?;
    let witness = if closed { None } else { n_closed_witness(&g, &d, n)? };
    let product = witness.as_ref().and_then(|w| g.product_of(w));
    match format {
        Format::Json => Ok(pretty(&json!({
            "group": group,
            "subset": labels(&g, &d),
            "n": n,
            "closed": closed,
            "witness": witness.as_ref().map(|w| w.iter().map(|&x| g.label(x)).collect::<Vec<_>>()),
            "product": product.map(|p| g.label(p)),
        }))),
        Format::Text => {
            let mut out = format!("{n}-closed: {closed}\n");
            if let (Some(w), Some(p)) = (&witness, product) {
                let factors: Vec<&str> = w.iter().map(|&x| g.label(x)).collect();
                out.push_str(&format!("witness: ({}) -> {} (not in the subset)\n", factors.join(", "), g.label(p)));
            }
            Ok(out)
        }
    }
}

pub fn cmd_coset(
    group: &str,
    subgroup_gens: &str,
    rep: &str,
    power_m: Option<usize>,
    spectrum_check: usize,
    format: Format,
) -> Result<String, InputError> {
    let g = load_group(group)?;
    let gens = subset_arg(subgroup_gens, &g)?;
    let gens: Vec<Element> = gens.iter().map(|x| g.element(x)).collect::<Result<_, _>>()?;
    let h = generated_subgroup(&g, &gens)?;
    let a = element_arg(rep, &g)?;
    let report = analyze_coset(&g, a, &h)?;
    let spectrum = if report.commutes { Some(closedness_spectrum(&g, a, &h, spectrum_check.max(2))?) } else { None };
    let power = match power_m {
        Some(m) if report.commutes => Some(power_coset_closedness(&g, a, &h, m)?),
        _ => None,
    };
    let mut violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    violations.extend(spectrum.iter().flat_map(|s| &s.violations).map(|v| v.to_string()));
    violations.extend(power.iter().flat_map(|p| &p.violations).map(|v| v.to_string()));

    let a_label = g.label(a.index());
    match format {
        Format::Json => Ok(pretty(&json!({
            "group": group,
            "subgroup": labels(&g, h.carrier()),
            "index": index(&g, &h),
            "rep": a_label,
            "coset": labels(&g, &report.coset),
            "commutes": report.commutes,
            "leastExponent": report.least_exponent,
            "leastClosedness": report.least_closedness,
            "spectrum": spectrum.as_ref().map(|s| json!({
                "step": s.step,
                "offset": s.offset,
                "verifiedUpTo": s.verified_up_to,
                "description": s.describe(),
            })),
            "power": power.as_ref().map(|p| json!({
                "m": p.m,
                "coset": labels(&g, &p.coset),
                "c": p.c,
                "closedness": p.closedness,
            })),
            "violations": violations,
        }))),
        Format::Text => {
            let mut out = format!(
                "H = {} (order {}, index {})\n{a_label}H = {}\n",
                h.carrier().display(&g),
                h.order(),
                index(&g, &h),
                report.coset.display(&g)
            );
            out.push_str(&format!("least exponent t = {} ({a_label}^{} in H)\n", report.least_exponent, report.least_exponent));
            match (&spectrum, report.least_closedness) {
                (Some(s), Some(k)) => {
                    out.push_str(&format!("aH = Ha: true\nleast closedness k = {k}\n"));
                    out.push_str(&format!("spectrum: {} (checked up to m = {})\n", s.describe(), s.verified_up_to));
                }
                _ => out.push_str("aH = Ha: false\nnever m-closed (aH ≠ Ha)\n"),
            }
            if let Some(p) = &power {
                let as_h = if &p.coset == h.carrier() { " = H" } else { "" };
                out.push_str(&format!(
                    "power m = {}: {a_label}^{}H = {}{as_h}, c = {}, least closedness {}\n",
                    p.m,
                    p.m,
                    p.coset.display(&g),
                    p.c,
                    p.closedness
                ));
            } else if let Some(m) = power_m {
                out.push_str(&format!("power m = {m}: not applicable, aH ≠ Ha\n"));
            }
            for v in &violations {
                out.push_str(&format!("violation: {v}\n"));
            }
            Ok(out)
        }
    }
}

pub fn cmd_group(group: &str, format: Format) -> Result<String, InputError> {
    let g = load_group(group)?;
    let elements: Vec<(String, usize)> = (0..g.order()).map(|x| (g.label(x).to_string(), g.order_of(x))).collect();
    match format {
        Format::Json => Ok(pretty(&json!({
            "group": group,
            "order": g.order(),
            "abelian": g.is_abelian(),
            "identity": g.label(g.identity_index()),
            "permutationDegree": g.permutation_degree(),
            "elements": elements.iter().map(|(l, o)| json!({"label": l, "order": o})).collect::<Vec<_>>(),
        }))),
        Format::Text => {
            let mut out = format!(
                "{group}: order {}, {}, identity {}\n",
                g.order(),
                if g.is_abelian() { "abelian" } else { "non-abelian" },
                g.label(g.identity_index())
            );
            for (i, (label, order)) in elements.iter().enumerate() {
                out.push_str(&format!("  {i:>4}  {label:<16} order {order}\n"));
            }
            Ok(out)
        }
    }
}

pub fn cmd_subgroups(group: &str, format: Format) -> Result<String, InputError> {
    let g = load_group(group)?;
    let subgroups = all_subgroups(&g);
    let rows: Vec<(Vec<String>, usize, usize, bool)> = subgroups
        .iter()
        .map(|h| Ok((labels(&g, h.carrier()), h.order(), index(&g, h), is_normal_classic(&g, h)?)))
        .collect::<Result<_, Error>>()?;
    match format {
        Format::Json => Ok(pretty(&json!({
            "group": group,
            "order": g.order(),
            "subgroups": rows.iter().map(|(e, o, i, n)| json!({
                "elements": e, "order": o, "index": i, "normal": n,
            })).collect::<Vec<_>>(),
        }))),
        Format::Text => {
            let mut out = format!("{group}: {} subgroups\n", rows.len());
            for (elements, order, idx, normal) in &rows {
                out.push_str(&format!(
                    "  order {order:>3}  index {idx:>3}  {}  {{{}}}\n",
                    if *normal { "normal" } else { "      " },
                    elements.join(", ")
                ));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nclosed_core::parse::ParseErrorKind;

    #[test]
    fn check_outputs() {
        assert_eq!(cmd_check("Z4", "1,3", 3, Format::Text).unwrap(), "3-closed: true\n");
        let out = cmd_check("S3", "(1 3),(1 2 3)", 3, Format::Text).unwrap();
        assert!(out.starts_with("3-closed: false\nwitness: ("), "{out}");
        match cmd_check("Z4", "", 3, Format::Text).unwrap_err() {
            InputError::Parse { error, .. } => assert_eq!(error.kind, ParseErrorKind::EmptySubsetSpec),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn coset_outputs() {
        let z9 = cmd_coset("Z9", "3", "1", None, 20, Format::Text).unwrap();
        assert!(z9.contains("least exponent t = 3"), "{z9}");
        assert!(z9.contains("least closedness k = 4"), "{z9}");
        assert!(z9.contains("spectrum: m ≡ 1 (mod 3), m ≥ 4"), "{z9}");
        let s3 = cmd_coset("S3", "(1 2)", "(1 3)", None, 20, Format::Text).unwrap();
        assert!(s3.contains("never m-closed (aH ≠ Ha)"), "{s3}");
        let p = cmd_coset("Z9", "3", "1", Some(3), 20, Format::Text).unwrap();
        assert!(p.contains("= H, c = 1, least closedness 2"), "{p}");
        assert!(cmd_coset("Z9", "3", "3", None, 20, Format::Text).is_err());
    }

    #[test]
    fn group_and_subgroups() {
        assert!(cmd_group("Q8", Format::Text).unwrap().contains("order 8, non-abelian"));
        let subs: Value = serde_json::from_str(&cmd_subgroups("S3", Format::Json).unwrap()).unwrap();
        assert_eq!(subs["subgroups"].as_array().unwrap().len(), 6);
    }
}
