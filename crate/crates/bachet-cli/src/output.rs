//! Rendering for each subcommand. The table format is for eyes only;
//! csv and jsonl are stable, machine-readable, and byte-deterministic.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use clap::ValueEnum;

use bachet::counting::{CurveCount, ResidueClass, TwistPair};
use bachet::field::Factorization;
use bachet::report;
use bachet::structure::{GroupStructure, TorsionCensus};
use bachet::theorems::{ClaimId, ClassReport, NnInstance};
use bachet::BachetCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Jsonl,
}

/// Write to the given file (UTF-8, LF endings) or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn render_count(
    e: &BachetCurve,
    class: ResidueClass,
    count: &CurveCount,
    format: OutputFormat,
) -> String {
    let p = e.prime().value();
    let b = count.trace();
    match format {
        OutputFormat::Table => format!(
            "p={} a={} class={} N={} b={:+} t={}\nHasse: b^2 = {} <= 4p = {}\n",
            p,
            e.a(),
            class.name(),
            count.order(),
            b,
            count.t(),
            b * b,
            4 * p
        ),
        OutputFormat::Csv => format!(
            "p,a,class,N,b,t,hasse_ok\n{},{},{},{},{:+},{},true\n",
            p,
            e.a(),
            class.name(),
            count.order(),
            b,
            count.t()
        ),
        OutputFormat::Jsonl => format!(
            "{{\"p\":{},\"a\":{},\"class\":\"{}\",\"N\":{},\"b\":{},\"t\":{},\"hasse_ok\":true}}\n",
            p,
            e.a(),
            class.name(),
            count.order(),
            b,
            count.t()
        ),
    }
}

pub fn render_points(
    e: &BachetCurve,
    limit: Option<usize>,
    format: OutputFormat,
) -> bachet::Result<String> {
    let points = e.enumerate_points()?;
    let factored = Factorization::of(points.len() as u64);
    let shown = limit.unwrap_or(points.len()).min(points.len());
    let mut out = String::new();
    match format {
        OutputFormat::Table => {
            let _ = writeln!(
                out,
                "{} points on {} (showing {})",
                points.len(),
                e,
                shown
            );
            for pt in &points[..shown] {
                let _ = writeln!(out, "  {}  order={}", pt, pt.order(&factored)?);
            }
        }
        OutputFormat::Csv => {
            out.push_str("x,y,order\n");
            for pt in &points[..shown] {
                let order = pt.order(&factored)?;
                match pt.coords() {
                    None => {
                        let _ = writeln!(out, ",,{order}");
                    }
                    Some((x, y)) => {
                        let _ = writeln!(out, "{x},{y},{order}");
                    }
                }
            }
        }
        OutputFormat::Jsonl => {
            for pt in &points[..shown] {
                let order = pt.order(&factored)?;
                match pt.coords() {
                    None => {
                        let _ = writeln!(out, "{{\"x\":null,\"y\":null,\"order\":{order}}}");
                    }
                    Some((x, y)) => {
                        let _ = writeln!(
                            out,
                            "{{\"x\":{x},\"y\":{y},\"order\":{order}}}"
                        );
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn render_structure(
    e: &BachetCurve,
    s: &GroupStructure,
    census: &TorsionCensus,
    path: &str,
    format: OutputFormat,
) -> String {
    let p = e.prime().value();
    match format {
        OutputFormat::Table => format!(
            "p={} a={}: {} (n={} m={} nm={}) order3={} path={}\n",
            p,
            e.a(),
            s,
            s.n(),
            s.m(),
            s.nm(),
            census.order3,
            path
        ),
        OutputFormat::Csv => format!(
            "p,a,n,m,nm,order3,path\n{},{},{},{},{},{},{}\n",
            p,
            e.a(),
            s.n(),
            s.m(),
            s.nm(),
            census.order3,
            path
        ),
        OutputFormat::Jsonl => format!(
            "{{\"p\":{},\"a\":{},\"n\":{},\"m\":{},\"nm\":{},\"order3\":{},\"path\":\"{}\"}}\n",
            p,
            e.a(),
            s.n(),
            s.m(),
            s.nm(),
            census.order3,
            path
        ),
    }
}

pub fn render_twist(pair: &TwistPair, format: OutputFormat) -> String {
    let p = pair.original.prime().value();
    let (a, n, b) = (
        pair.original.a().value(),
        pair.original_count.order(),
        pair.original_count.trace(),
    );
    let (a2, n2, b2) = (
        pair.twist.a().value(),
        pair.twist_count.order(),
        pair.twist_count.trace(),
    );
    match format {
        OutputFormat::Table => format!(
            "p={p} g={}\n  curve a={a}: N={n} b={b:+}\n  twist a={a2}: N={n2} b={b2:+}\n  N + N' = {} = 2p + 2\n",
            pair.g,
            n + n2
        ),
        OutputFormat::Csv => format!(
            "p,a,g,N,b,a_twist,N_twist,b_twist\n{p},{a},{},{n},{b:+},{a2},{n2},{b2:+}\n",
            pair.g
        ),
        OutputFormat::Jsonl => format!(
            "{{\"p\":{p},\"a\":{a},\"g\":{},\"N\":{n},\"b\":{b},\"a_twist\":{a2},\"N_twist\":{n2},\"b_twist\":{b2}}}\n",
            pair.g
        ),
    }
}

pub fn render_verify(rows: &[ClassReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => report::reports_to_csv(rows),
        OutputFormat::Jsonl => report::reports_to_jsonl(rows),
        OutputFormat::Table => {
            let mut out = String::from(
                "p      class a    N      b     t    n    m     order3 verdict\n",
            );
            for r in rows {
                let failed: Vec<&str> = r.failures().map(ClaimId::name).collect();
                let verdict = if failed.is_empty() {
                    "all-pass".to_string()
                } else {
                    format!("FAIL: {}", failed.join(","))
                };
                let _ = writeln!(
                    out,
                    "{:<6} {:<5} {:<4} {:<6} {:<+5} {:<4} {:<4} {:<5} {:<6} {}",
                    r.p,
                    r.class.name(),
                    r.a_rep,
                    r.order,
                    r.trace,
                    r.t(),
                    r.n,
                    r.m,
                    r.order3,
                    verdict
                );
            }
            out
        }
    }
}

pub fn render_washington(instances: &[NnInstance], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::from("p      class n    form     p_mod_12 refinement\n");
            for i in instances {
                let _ = writeln!(
                    out,
                    "{:<6} {:<5} {:<4} {:<8} {:<8} {}",
                    i.p,
                    i.class.name(),
                    i.n,
                    i.form.map_or("none", |f| f.name()),
                    i.p % 12,
                    if i.satisfies_refinement() { "ok" } else { "VIOLATED" }
                );
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("p,class,n,form,p_mod_12,refinement_ok\n");
            for i in instances {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    i.p,
                    i.class.name(),
                    i.n,
                    i.form.map_or("none", |f| f.name()),
                    i.p % 12,
                    i.satisfies_refinement()
                );
            }
            out
        }
        OutputFormat::Jsonl => {
            let mut out = String::new();
            for i in instances {
                let _ = writeln!(
                    out,
                    "{{\"p\":{},\"class\":\"{}\",\"n\":{},\"form\":\"{}\",\"p_mod_12\":{},\"refinement_ok\":{}}}",
                    i.p,
                    i.class.name(),
                    i.n,
                    i.form.map_or("none", |f| f.name()),
                    i.p % 12,
                    i.satisfies_refinement()
                );
            }
            out
        }
    }
}
