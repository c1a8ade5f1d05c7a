//! Human-readable rendering: a few `key value` lines, then aligned tables.

use std::fmt::Write;

use crate::envelope::{Body, OutputEnvelope};

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    // numeric columns right-aligned, text left-aligned
    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        let mut numeric = vec![true; widths.len()];
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                widths[i] = widths[i].max(c.chars().count());
                numeric[i] &= is_numeric(c);
            }
        }
        let line = |cells: Vec<&str>| -> String {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                if numeric[i] {
                    let _ = write!(s, "{c:>w$}", w = widths[i]);
                } else {
                    let _ = write!(s, "{c:<w$}", w = widths[i]);
                }
            }
            s.trim_end().to_string()
        };
        out.push_str(&line(self.header.clone()));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
            out.push('\n');
        }
    }
}

fn is_numeric(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

fn kv(out: &mut String, pairs: &[(&str, String)]) {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        let line = format!("{k:<width$}  {v}");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push('\n');
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn render(env: &OutputEnvelope) -> String {
    let mut out = String::new();
    match &env.body {
        Body::Homology(h) => {
            let mut pairs = vec![
                ("command", "homology".to_string()),
                ("dimension", h.dimension.to_string()),
                ("middle_rank", h.middle_rank.to_string()),
                ("torsion", list(&h.torsion)),
                ("homotopy_sphere", h.homotopy_sphere.to_string()),
                ("description", h.description.clone()),
            ];
            if let Some(note) = &h.note {
                pairs.push(("note", note.clone()));
            }
            kv(&mut out, &pairs);
            let mut t = Table::new(vec!["degree", "group"]);
            for (d, g) in &h.full_graded {
                t.row(vec![d.to_string(), g.to_string()]);
            }
            t.render(&mut out);
        }
        Body::Orbits(p) => {
            kv(
                &mut out,
                &[
                    ("command", "orbits".to_string()),
                    ("manifold", p.exponents.to_string()),
                    ("character", p.character.kind.to_string()),
                    ("sum_reciprocals", p.character.sum_reciprocals.to_string()),
                    ("lcm", p.lcm.to_string()),
                ],
            );
            let mut t = Table::new(vec!["m", "J", "dim", "kappa", "s", "betti"]);
            for e in &p.types {
                t.row(vec![
                    e.orbit_type.m.to_string(),
                    e.orbit_type.support.to_string(),
                    e.orbit_type.orbit_space_dim.to_string(),
                    e.kappa.to_string(),
                    e.period_multiplier.to_string(),
                    list(&e.orbit_space_ranks),
                ]);
            }
            t.render(&mut out);
        }
        Body::Ch(r) => {
            kv(
                &mut out,
                &[
                    ("command", "ch".to_string()),
                    ("manifold", r.input.to_string()),
                    ("window", r.ranks.window.to_string()),
                    ("character", r.character.kind.to_string()),
                    ("sum_reciprocals", r.character.sum_reciprocals.to_string()),
                    ("period_shift", r.period_shift.to_string()),
                    ("extremal_degree", r.extremal_degree.to_string()),
                    ("well_defined", r.well_defined.to_string()),
                ],
            );
            let mut t = Table::new(vec!["degree", "rank"]);
            for (d, k) in &r.ranks.ranks {
                t.row(vec![d.to_string(), k.to_string()]);
            }
            t.render(&mut out);
            if !r.contributions.is_empty() {
                out.push('\n');
                let mut t = Table::new(vec!["m", "N", "j", "degree", "rank"]);
                for c in &r.contributions {
                    t.row(vec![
                        c.m.to_string(),
                        c.multiplier.to_string(),
                        c.j.to_string(),
                        c.degree.to_string(),
                        c.rank.to_string(),
                    ]);
                }
                t.render(&mut out);
            }
        }
        Body::Sum(c) => {
            kv(
                &mut out,
                &[
                    ("command", "sum".to_string()),
                    ("n", c.half_dim_n.to_string()),
                    ("cutoff", c.cutoff.to_string()),
                ],
            );
            let mut t = Table::new(vec!["degree", "count"]);
            for (d, k) in &c.counts {
                t.row(vec![d.to_string(), k.to_string()]);
            }
            t.render(&mut out);
        }
        Body::Exotic(p) => {
            let v = &p.verdict;
            kv(
                &mut out,
                &[
                    ("command", "exotic".to_string()),
                    ("manifold", p.exponents.to_string()),
                    ("n", v.n.to_string()),
                    ("passed", v.passed.to_string()),
                    ("strictly_increasing", p.strictly_increasing.to_string()),
                ],
            );
            let mut t = Table::new(vec!["clause", "holds", "witness"]);
            for c in &v.clauses {
                t.row(vec![c.name.clone(), c.holds.to_string(), c.witness.clone()]);
            }
            t.render(&mut out);
            out.push('\n');
            let mut t = Table::new(vec!["copies", "at_2n_minus_4", "at_2n_minus_3"]);
            for s in &p.sums {
                t.row(vec![
                    s.copies.to_string(),
                    s.generators_2n_minus_4.to_string(),
                    s.generators_2n_minus_3.to_string(),
                ]);
            }
            t.render(&mut out);
        }
    }
    if !env.diagnostics.is_empty() {
        out.push('\n');
        for d in &env.diagnostics {
            let _ = writeln!(out, "# {d}");
        }
    }
    out
}
