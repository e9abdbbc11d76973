//! Searches small knotoid diagrams for the named examples and writes them
//! as fixtures.
//!
//! cargo run --release -p knotoid --example find_fixtures -- 5 [out-dir]

use std::collections::BTreeMap;

use knotoid::diagram::{Fixture, GaussToken, Meta};
use knotoid::invariants::{self, BoundsReport};
use knotoid::ops::{self, ClosureMode};
use knotoid::{Diagram, Laurent1, Laurent2, Var};
use serde_json::json;

struct Candidate {
    code: String,
    diagram: Diagram,
    expected: BTreeMap<String, serde_json::Value>,
}

fn code_string(tokens: &[GaussToken]) -> String {
    tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

fn has_kink(tokens: &[GaussToken]) -> bool {
    tokens.windows(2).any(|w| w[0].label == w[1].label)
}

fn poly(s: &str) -> Laurent1 {
    s.parse().unwrap()
}

/// The 2-fold lift has a bifoil-like index polynomial and the 3-fold lift
/// is trivial.
fn spiral_lifts(d: &Diagram) -> bool {
    let two = ops::lift_cover(d, 2).unwrap().diagram;
    let three = ops::lift_cover(d, 3).unwrap().diagram;
    let f2 = invariants::index_polynomial(&two).unwrap();
    f2.signed_degree(knotoid::Sign::Plus) == 1
        && f2.signed_degree(knotoid::Sign::Minus) == 0
        && invariants::index_polynomial(&three).unwrap().is_zero()
        && invariants::normalized_turaev(&three.keep_shortcut(0)).unwrap() == Laurent2::one()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let max_n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let out_dir = args.get(2);

    let kinoshita_f = poly("t^-1 - 2 + t");
    let cloud_f = poly("1 - t");
    let cloud_u2 = Laurent1::parse_with("-A^-2 + 2*A^-6 - A^-10", Var::A).unwrap();
    let one = Laurent1::one(Var::A);

    let mut found: BTreeMap<&str, Vec<Candidate>> = BTreeMap::new();
    let mut keep = |name: &'static str, c: Candidate| {
        let list = found.entry(name).or_default();
        if list.len() < 10 {
            eprintln!("{name}: {} {:?}", c.code, c.expected);
            list.push(c);
        }
    };

    for n in 0..=max_n {
        let codes = Diagram::all_gauss_codes(n);
        eprintln!("{n} crossings: {} codes", codes.len());
        for tokens in codes {
            if has_kink(&tokens) {
                continue;
            }
            let d = Diagram::from_gauss_tokens(&tokens).unwrap();
            let f = invariants::index_polynomial(&d).unwrap();
            let paths = d.shortcut_paths(d.edge_count(), 32);
            let min = paths[0].len();
            let minimal: Vec<Diagram> =
                paths.iter().filter(|p| p.len() == min).map(|p| d.with_shortcut(p).unwrap()).collect();
            let code = code_string(&tokens);
            let seq_of = |s: &str| minimal.iter().find(|m| m.seq().to_string() == s).cloned();

            if n == 3 && min == 0 && d.writhe().abs() == 3 {
                let b = invariants::normalized_bracket(&d).unwrap();
                if b != one {
                    let expected = [("F".into(), json!("0")), ("seq".into(), json!(""))].into();
                    keep("trefoil", Candidate { code: code.clone(), diagram: minimal[0].clone(), expected });
                }
            }
            if f == kinoshita_f {
                if let Some(s) = seq_of("+-") {
                    let trivial = [ClosureMode::Over, ClosureMode::Under]
                        .iter()
                        .all(|&m| invariants::normalized_bracket(&ops::closure(&s, m).unwrap()).unwrap() == one);
                    if trivial {
                        let expected = [("F".into(), json!("t^-1 - 2 + t")), ("seq".into(), json!("+-"))].into();
                        keep("kinoshita", Candidate { code: code.clone(), diagram: s, expected });
                    }
                }
            }
            if f == cloud_f && min == 2 {
                let t = invariants::normalized_turaev(&minimal[0]).unwrap();
                if t.u_coefficient(2) == cloud_u2 {
                    let s = seq_of("-+").or_else(|| seq_of("+-")).unwrap_or_else(|| minimal[0].clone());
                    let seqs: Vec<String> = minimal.iter().map(|m| m.seq().to_string()).collect();
                    let expected = [
                        ("F".into(), json!("1 - t")),
                        ("turaev_u2".into(), json!("-A^-2 + 2*A^-6 - A^-10")),
                        ("minimal_shortcut_sequences".into(), json!(seqs)),
                    ]
                    .into();
                    keep("cloud", Candidate { code: code.clone(), diagram: s, expected });
                }
            }
            if n == 2 && f.signed_degree(knotoid::Sign::Plus) == 1 {
                if let Some(s) = seq_of("+") {
                    let expected = [("F".into(), json!(f.to_string())), ("seq".into(), json!("+"))].into();
                    keep("bifoil", Candidate { code: code.clone(), diagram: s, expected });
                }
            }
            if min == 2 && f.signed_degree(knotoid::Sign::Plus) == 2 && f.signed_degree(knotoid::Sign::Minus) == 0 {
                if let Some(s) = seq_of("++").filter(spiral_lifts) {
                    let expected = [("F".into(), json!(f.to_string())), ("seq".into(), json!("++"))].into();
                    keep("spiral", Candidate { code: code.clone(), diagram: s, expected });
                }
            }
            if f.is_zero() && min == 2 && n >= 3 {
                if let Some(s) = seq_of("+-") {
                    let t: Laurent2 = invariants::normalized_turaev(&s).unwrap();
                    let b = BoundsReport::from_polynomials(&f, &t);
                    if b.lower_plus == 1 && b.lower_minus == 1 {
                        let expected = [("F".into(), json!("0")), ("seq".into(), json!("+-"))].into();
                        keep("borromean", Candidate { code: code.clone(), diagram: s, expected });
                    }
                }
            }
        }
    }

    // The spiral must lift to the chosen bifoil.
    if let (Some(bifoil), Some(spirals)) = (found.get("bifoil").and_then(|b| b.first()), found.get("spiral")) {
        let key = |d: &Diagram| {
            (
                invariants::index_polynomial(d).unwrap(),
                invariants::normalized_bracket(d).unwrap(),
                invariants::normalized_turaev(&d.keep_shortcut(0)).unwrap(),
            )
        };
        let target = key(&bifoil.diagram);
        let pos = spirals.iter().position(|s| key(&ops::lift_cover(&s.diagram, 2).unwrap().diagram) == target);
        eprintln!("spiral lifting to the bifoil: {:?}", pos.map(|i| &spirals[i].code));
        let list = found.get_mut("spiral").unwrap();
        match pos {
            Some(i) => {
                let c = list.remove(i);
                list.insert(0, c);
            }
            None => list.clear(),
        }
    }

    if let Some(dir) = out_dir {
        let mut all: Vec<(&str, Diagram, BTreeMap<String, serde_json::Value>, String)> = found
            .iter()
            .filter_map(|(name, list)| {
                list.first().map(|c| (*name, c.diagram.clone(), c.expected.clone(), c.code.clone()))
            })
            .collect();
        all.push((
            "trivial",
            Diagram::trivial_shortcut(),
            [("F".into(), json!("0")), ("seq".into(), json!(""))].into(),
            String::new(),
        ));
        for (name, d, mut expected, code) in all {
            if !code.is_empty() {
                expected.insert("gauss".into(), json!(code));
            }
            let fixture = Fixture { diagram: d, meta: Some(Meta { name: Some(name.into()), expected }) };
            let path = format!("{dir}/{name}.json");
            std::fs::write(&path, fixture.to_json()).unwrap();
            eprintln!("wrote {path}");
        }
    }
}
