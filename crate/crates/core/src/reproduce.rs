//! The full assertion suite behind `boxsoc verify-paper`.
//!
//! Every check compares a computed value with its expected one. The suite
//! also renders the η table and the bound comparison table.

use std::fmt::Write as _;
use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use crate::bounds::{
    beta_convex, beta_convex_exact, bounds_report, edge_lower_bound, eta_quadratic_bound, f_exact,
    f_map, quadratic_min_root, BoundsReport, PRINTED_TABLE,
};
use crate::boxicity::{
    adiga_lower_bound, boxicity_report, decide_boxicity_leq, Decision, DEFAULT_BUDGET,
};
use crate::eckhoff::{validate_exposure, verify_split_identity, ExposureCertificate, Face};
use crate::error::Result;
use crate::fixtures::{self, Fixture};
use crate::geometry::{agreement_proportion, intersection_graph, Rational};
use crate::graph::Graph;
use crate::search::{
    enumerate_agreeable, eta_upper, min_agreement_proportion, verify_main_theorem, EtaCertificate,
    EtaTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaRow {
    pub r: usize,
    pub computed: String,
    pub expected: &'static str,
    pub certificate: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reproduction {
    pub checks: Vec<Check>,
    pub eta_table: Vec<EtaRow>,
    pub bounds_table: Vec<BoundsReport>,
    pub elapsed_ms: u128,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{mark} {:<44} {}", c.name, c.detail);
        }
        let _ = writeln!(out, "\nη(r)   computed  expected  certificate");
        for row in &self.eta_table {
            let _ = writeln!(
                out,
                "r = {}  {:<9} {:<9} {}",
                row.r, row.computed, row.expected, row.certificate
            );
        }
        let _ = writeln!(out, "\n d   1/(2d)  printed   F^[d-1](1/2)  printed");
        for b in &self.bounds_table {
            if let Some(t) = &b.table {
                let _ = writeln!(
                    out,
                    " {}   {:<7.4} {:<9} {:<13.6} {}",
                    b.d, b.main_lower_value, t.printed_main, b.gamma_lower, t.printed_gamma
                );
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "\n{passed}/{} checks passed in {} ms",
            self.checks.len(),
            self.elapsed_ms
        );
        out
    }
}

struct Suite(Vec<Check>);

impl Suite {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records an error as a failed check instead of aborting the suite.
    fn try_check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((passed, detail)) => self.check(name, passed, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

fn triangles(g: &Graph) -> u64 {
    g.count_cliques_of_size(3)
}

fn same_class(a: &Graph, b: &Graph) -> bool {
    a.canonical_form() == b.canonical_form()
}

fn fixture_checks(s: &mut Suite) {
    let z5 = fixtures::z5();
    let arr = z5.arrangement().expect("arrangement fixture");
    let g = z5.graph();
    s.check(
        "z5: intersection graph is the 5-cycle",
        same_class(&g, &Graph::cycle(5).expect("cycle")),
        format!("{} edges", g.edge_count()),
    );
    let p = agreement_proportion(arr);
    s.check(
        "z5: ω = 2, proportion 2/5",
        g.clique_number() == 2 && p == Ratio::new(2, 5),
        format!("ω = {}, proportion {p}", g.clique_number()),
    );

    let g = fixtures::fig38a().graph();
    s.check(
        "fig38a: 16 edges, 4-regular, ω = 3, 8 triangles",
        g.edge_count() == 16
            && g.degrees().iter().all(|&d| d == 4)
            && g.clique_number() == 3
            && triangles(&g) == 8,
        format!("{} edges, {} triangles", g.edge_count(), triangles(&g)),
    );
    let g = fixtures::fig38b().graph();
    let profile = g.degree_profile();
    s.check(
        "fig38b: 17 edges, Δ = 5, ω = 3, 10 triangles",
        g.edge_count() == 17
            && profile.max_degree == 5
            && g.clique_number() == 3
            && triangles(&g) == 10,
        format!(
            "{} edges, Δ = {}, {} triangles",
            g.edge_count(),
            profile.max_degree,
            triangles(&g)
        ),
    );
    let g = fixtures::fig38c_graph();
    s.check(
        "fig38c: agreeable, ω = 3, 12 triangles",
        g.is_agreeable(2, 3) && g.clique_number() == 3 && triangles(&g) == 12,
        format!("{} triangles", triangles(&g)),
    );
    let g = fixtures::fig134_graph();
    let k4 = g.count_cliques_of_size(4);
    s.check(
        "fig134: 8-regular, ω = 4, 39 four-cliques",
        g.degrees().iter().all(|&d| d == 8) && g.clique_number() == 4 && k4 == 39,
        format!("{} edges, {k4} four-cliques", g.edge_count()),
    );
    let p = Ratio::new(g.clique_number(), g.n());
    s.check(
        "fig134: proportion 4/13",
        p == Ratio::new(4, 13),
        p.to_string(),
    );

    let w4 = fixtures::wheel4();
    let delta = w4.degree_profile().min_degree;
    let floor = w4.n() - w4.clique_number() - 1;
    s.check(
        "w4: agreeable, ω = 3, δ > n - ω - 1",
        w4.is_agreeable(2, 3) && w4.clique_number() == 3 && delta > floor,
        format!("δ = {delta}, n - ω - 1 = {floor}"),
    );

    let mut all_ok = true;
    for name in [
        "z5", "fig38a", "fig38b", "fig38c", "fig134", "w4", "exposure",
    ] {
        let f = fixtures::load_fixture(name).expect("registered fixture");
        let agreeable = name == "exposure" || f.graph().is_agreeable(2, 3);
        all_ok &= f.check() && agreeable;
    }
    s.check("fixtures realise their edge lists", all_ok, "");

    s.try_check("two clusters of r copies give 1/2", || {
        let mut ok = true;
        for r in 1..=6 {
            if let Fixture::Arrangement { arrangement, .. } = fixtures::remark1(r)? {
                let g = intersection_graph(&arrangement);
                ok &=
                    g.is_agreeable(2, 3) && agreement_proportion(&arrangement) == Ratio::new(1, 2);
            }
        }
        Ok((ok, "r = 1..6".into()))
    });

    let k3 = Graph::complete_partite_pairs(3).expect("partite");
    s.check(
        "k_partite 3 is the octahedron",
        k3.n() == 6 && k3.edge_count() == 12 && k3.degrees().iter().all(|&d| d == 4),
        "",
    );
}

fn eta_checks(s: &mut Suite, table: &EtaTable) -> Vec<EtaRow> {
    let expected = ["2", "5", "8", "13", "≤18"];
    let mut rows = Vec::new();
    for (i, want) in expected.iter().enumerate() {
        let r = i + 1;
        let entry = table.get(r);
        let computed = match entry {
            Some(e) => match e.confirmed_value {
                Some(v) => v.to_string(),
                None => format!("≤{}", e.upper_bound),
            },
            None => "missing".into(),
        };
        let certificate = entry
            .map(|e| e.impossibility.to_string())
            .unwrap_or_default();
        s.check(
            &format!("η({r}) = {want}"),
            computed == *want,
            computed.clone(),
        );
        rows.push(EtaRow {
            r,
            computed,
            expected: want,
            certificate,
        });
    }
    s.try_check("η(5) ≤ 18 via parity at n = 19", || {
        let (v, cert) = eta_upper(5, table)?;
        Ok((
            v == 18 && cert == EtaCertificate::Parity { n: 19, degree: 13 },
            cert.to_string(),
        ))
    });
    s.check(
        "η(r) ≤ r(r+3)/2 for r = 1..4",
        (1..=4).all(|r| {
            table
                .confirmed(r)
                .is_some_and(|v| v <= eta_quadratic_bound(r))
        }),
        "",
    );
    for (n, r) in [(6, 2), (9, 3)] {
        s.try_check(
            &format!("no agreeable graph with n = {n}, ω ≤ {r}"),
            || {
                let c = enumerate_agreeable(n, r, table)?;
                Ok((
                    c.survivors.is_empty(),
                    format!("{} extensions examined", c.graphs_examined),
                ))
            },
        );
    }
    s.try_check("ω ≤ 2 on five vertices is only the 5-cycle", || {
        let c = enumerate_agreeable(5, 2, table)?;
        let c5 = Graph::cycle(5)?;
        Ok((
            c.survivors.len() == 1 && same_class(&c.survivors[0], &c5),
            format!("{} graphs", c.survivors.len()),
        ))
    });
    s.try_check("ω ≤ 4 on 13 vertices is only fig134; none on 14", || {
        let c = enumerate_agreeable(13, 4, table)?;
        let unique =
            c.survivors.len() == 1 && same_class(&c.survivors[0], &fixtures::fig134_graph());
        let none = enumerate_agreeable(14, 4, table)?.survivors.is_empty();
        Ok((
            unique && none,
            format!("{} graphs on 13 vertices", c.survivors.len()),
        ))
    });
    rows
}

fn bounds_checks(s: &mut Suite) -> Vec<BoundsReport> {
    let mut reports = Vec::new();
    for (d, main, gamma) in PRINTED_TABLE {
        match bounds_report(d) {
            Ok(b) => {
                let t = b.table.clone().expect("printed row");
                s.check(
                    &format!("table d = {d}: {main} / {gamma}"),
                    t.main_matches && t.gamma_matches,
                    format!("{:.4} / {:.6}", b.main_lower_value, b.gamma_lower),
                );
                reports.push(b);
            }
            Err(e) => s.check(&format!("table d = {d}"), false, e.to_string()),
        }
    }
    s.try_check("F(1/2) = (5 - √13)/6", || {
        let exact = f_exact(Ratio::new(1, 2))?;
        let oracle = (5.0 - 13f64.sqrt()) / 6.0;
        Ok((
            exact.to_string() == "(5 - √13)/6" && (f_map(0.5)? - oracle).abs() < 1e-12,
            exact.to_string(),
        ))
    });
    s.try_check("β(2,3,1) = 1 - √(2/3)", || {
        let v = beta_convex(2, 3, 1)?;
        let exact = beta_convex_exact(2, 3, 1)?
            .map(|x| x.to_string())
            .unwrap_or_default();
        Ok((
            (v - (1.0 - (2.0f64 / 3.0).sqrt())).abs() < 1e-12,
            format!("{v:.6} = {exact}"),
        ))
    });
    s.try_check("β(2,3,2) = 0", || {
        let v = beta_convex(2, 3, 2)?;
        Ok((v == 0.0, v.to_string()))
    });
    s.try_check("edge bound sharp on z5 and fig38a", || {
        Ok((
            edge_lower_bound(5, 2)? == Ratio::from_integer(5)
                && edge_lower_bound(8, 3)? == Ratio::from_integer(16),
            "5, 16".into(),
        ))
    });
    s.try_check("quadratic root / n → F(1/2)", || {
        let n = 1_000_000;
        let x = quadratic_min_root(n, 0.5)? / n as f64;
        Ok(((x - f_map(0.5)?).abs() < 1e-4, format!("{x:.6}")))
    });
    reports
}

fn boxicity_checks(s: &mut Suite) {
    for (name, g) in [
        ("fig38a", fixtures::fig38a().graph()),
        ("fig38b", fixtures::fig38b().graph()),
    ] {
        s.try_check(&format!("box({name}) = 2"), || {
            let no = decide_boxicity_leq(&g, 1, DEFAULT_BUDGET)? == Decision::No;
            let witness = match decide_boxicity_leq(&g, 2, DEFAULT_BUDGET)? {
                Decision::Yes(w) => intersection_graph(&w) == g,
                _ => false,
            };
            Ok((no && witness, "no at 1, witness at 2".into()))
        });
    }
    s.try_check("box(K_3(2)) = 3", || {
        let g = Graph::complete_partite_pairs(3)?;
        let no = decide_boxicity_leq(&g, 2, DEFAULT_BUDGET)? == Decision::No;
        let yes = decide_boxicity_leq(&g, 3, DEFAULT_BUDGET)?.is_yes();
        Ok((no && yes, "no at 2, witness at 3".into()))
    });
    s.try_check("box(K_4(2)) = 4", || {
        let r = boxicity_report(&Graph::complete_partite_pairs(4)?, DEFAULT_BUDGET);
        Ok((r.exact == Some(4), format!("[{}, {}]", r.lower, r.upper)))
    });
    s.try_check("Adiga bound on K_d(2) is d, d ≤ 8", || {
        let mut ok = true;
        for d in 1..=8 {
            ok &= adiga_lower_bound(&Graph::complete_partite_pairs(d)?)? == d;
        }
        Ok((ok, String::new()))
    });
}

fn exposure_checks(s: &mut Suite) {
    let f = fixtures::exposure();
    let arr = f.arrangement().expect("arrangement fixture");
    let cert = ExposureCertificate {
        box_index: 1,
        axis: 2,
        side: Face::LowerFace,
        coordinate: Rational::new(5, 2),
    };
    s.check(
        "exposure: A is exposed by y = 5/2",
        validate_exposure(arr, &cert),
        "",
    );
    s.try_check("exposure: split identity for every k", || {
        let mut ok = true;
        for k in 1..arr.len() {
            ok &= verify_split_identity(arr, k)?;
        }
        Ok((ok, String::new()))
    });
}

fn theorem_checks(s: &mut Suite, table: &EtaTable) {
    for (d, r, want) in [
        (1, 1, Ratio::new(1, 2)),
        (1, 2, Ratio::new(1, 2)),
        (1, 3, Ratio::new(1, 2)),
        (2, 2, Ratio::new(2, 5)),
    ] {
        s.try_check(&format!("ρ({r}, {d}) = {want} ≥ 1/(2d)"), || {
            let c = verify_main_theorem(d, r, table, DEFAULT_BUDGET)?;
            Ok((
                c.passed() && c.minimum == want,
                format!("min {}", c.minimum),
            ))
        });
    }
    s.try_check("ρ(3, 2) = 3/8, attained by fig38a and fig38b", || {
        let m = min_agreement_proportion(3, Some(2), table, DEFAULT_BUDGET)?;
        let a = fixtures::fig38a_graph();
        let b = fixtures::fig38b().graph();
        let found = |g: &Graph| m.minimizers.iter().any(|h| same_class(g, h));
        Ok((
            m.value == Ratio::new(3, 8) && m.minimizers.len() == 2 && found(&a) && found(&b),
            format!("min {}, {} minimisers", m.value, m.minimizers.len()),
        ))
    });
    s.try_check("fig38c does not fit in the plane", || {
        let g = fixtures::fig38c_graph();
        let no = decide_boxicity_leq(&g, 2, DEFAULT_BUDGET)? == Decision::No;
        Ok((no, "box = 3".into()))
    });
}

/// Runs every check. Never panics on a failed check.
pub fn verify_paper() -> Reproduction {
    let start = Instant::now();
    let mut s = Suite(Vec::new());
    let table = match EtaTable::build(5) {
        Ok(t) => t,
        Err(e) => {
            s.check("η table builds", false, e.to_string());
            EtaTable::default()
        }
    };
    fixture_checks(&mut s);
    let eta_table = eta_checks(&mut s, &table);
    let bounds_table = bounds_checks(&mut s);
    boxicity_checks(&mut s);
    exposure_checks(&mut s);
    theorem_checks(&mut s, &table);
    Reproduction {
        checks: s.0,
        eta_table,
        bounds_table,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let rep = verify_paper();
        let failures: Vec<_> = rep.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(rep.eta_table.len(), 5);
        assert_eq!(rep.bounds_table.len(), 5);
        assert!(rep.render().contains("≤18"));
    }
}
