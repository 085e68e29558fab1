use std::fmt::Write;

use crate::output::*;

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.header);
        out.push('\n');
        out.push_str(&line(&width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
        for r in &self.rows {
            out.push('\n');
            out.push_str(&line(r));
        }
        out.push('\n');
        out
    }
}

fn list<T: std::fmt::Debug>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:?}")).collect();
    format!("({})", parts.join(","))
}

fn labelled<T: std::fmt::Debug>(m: &std::collections::BTreeMap<String, T>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}={v:?}")).collect();
    parts.join(" ")
}

/// Human-readable rendering of a report.
pub fn render(out: &Output) -> String {
    match out {
        Output::Newton(orbits) => {
            let mut t = Table::new(&["orbit", "e", "n", "f", "slope", "multiplicity"]);
            for o in orbits {
                for (k, seg) in o.polygon.segments.iter().enumerate() {
                    let head = if k == 0 {
                        vec![o.orbit.clone(), o.e.to_string(), o.n.to_string(), list(&o.f)]
                    } else {
                        vec![String::new(); 4]
                    };
                    let mut row = head;
                    row.extend([seg.slope.to_string(), seg.multiplicity.to_string()]);
                    t.row(row);
                }
            }
            t.render()
        }
        Output::Dual(rows) => {
            let mut t = Table::new(&["orbit", "slopes", "dual", "reflected", "agrees"]);
            for r in rows {
                t.row(vec![
                    r.orbit.clone(),
                    r.polygon.to_string(),
                    r.dual.to_string(),
                    r.reflected.to_string(),
                    r.agrees.to_string(),
                ]);
            }
            t.render()
        }
        Output::Levi(rows) => {
            let mut t = Table::new(&["embedding", "signature", "blocks", "slope indices"]);
            for r in rows {
                t.row(vec![
                    r.embedding.clone(),
                    format!("({},{})", r.signature.0, r.signature.1),
                    list(&r.blocks),
                    list(&r.slope_indices),
                ]);
            }
            t.render()
        }
        Output::Hasse(h) => {
            format!("p = {}, orbit lengths {}\nHasse weight = {}\n", h.p, list(&h.orbit_lengths), h.weight)
        }
        Output::Grranks(orbits) => {
            let mut t = Table::new(&["orbit", "i", "j", "rank"]);
            let mut tail = String::new();
            for o in orbits {
                for r in o.ranks.iter().filter(|r| r.j < r.i) {
                    t.row(vec![o.orbit.clone(), r.i.to_string(), r.j.to_string(), r.rank.to_string()]);
                }
                let _ = writeln!(
                    tail,
                    "{}: lower sum {}, parameter count {}",
                    o.orbit, o.lower_sum, o.parameter_count
                );
            }
            t.render() + "\n" + &tail
        }
        Output::Cascade(orbits) => {
            let mut t = Table::new(&["orbit", "slopes", "dim", "height", "mult", "kind", "diagonal"]);
            for o in orbits {
                for p in &o.pieces {
                    t.row(vec![
                        o.orbit.clone(),
                        format!("({},{})", p.upper, p.lower),
                        p.dimension.to_string(),
                        p.height.to_string(),
                        p.multiplicity.to_string(),
                        kind_name(p.kind).into(),
                        p.diagonal.to_string(),
                    ]);
                }
            }
            t.render()
        }
        Output::Params(p) => {
            let mut t = Table::new(&["orbit", "parameters"]);
            for (k, v) in &p.counts {
                t.row(vec![k.clone(), v.to_string()]);
            }
            t.row(vec!["total".into(), p.total.to_string()]);
            format!("{}\nmultiplicative embeddings: {}\n", t.render(), p.parameter_embeddings.join(" "))
        }
        Output::Restrict(r) => {
            let mut t = Table::new(&["component", "multiplicity", "dimension"]);
            for row in &r.rows {
                let parts: Vec<String> = row.parts.iter().map(|p| list(p)).collect();
                t.row(vec![parts.join(" x "), row.multiplicity.to_string(), row.dimension.to_string()]);
            }
            format!(
                "{} restricted to blocks {}\n{}\ndimension {} = total {}\n",
                list(&r.weight),
                list(&r.blocks),
                t.render(),
                r.dimension,
                r.total
            )
        }
        Output::RestrictLevi(r) => {
            let mut t = Table::new(&["component", "multiplicity", "dimension"]);
            for c in &r.components {
                t.row(vec![labelled(&c.weight), c.multiplicity.to_string(), c.dimension.to_string()]);
            }
            format!(
                "{}\ndimension {} = total {}, multiplicity free: {}\n",
                t.render(),
                r.dimension,
                r.total,
                r.multiplicity_free
            )
        }
        Output::Classify(c) => {
            let k = &c.classes;
            let mut s = format!(
                "positive {}\nscalar {}\nsum-symmetric {}\nsymmetric {}\nmultiplicity free {}\n",
                k.positive, k.scalar, k.sum_symmetric, k.symmetric, c.multiplicity_free
            );
            if let Some(t) = k.total {
                let _ = writeln!(s, "total {t}");
            }
            if let Some(d) = k.depth {
                let _ = writeln!(s, "depth {d}");
            }
            let _ = writeln!(s, "degrees {}", labelled(&k.degrees));
            s
        }
        Output::Simple(r) => {
            let mut s = format!("simple {} ({})\n", r.simple, reading_name(r.reading));
            for v in &r.violations {
                let _ = writeln!(s, "  {v}");
            }
            s
        }
        Output::Charcong(c) => format!("congruent modulo {}: {}\n", c.modulus, c.congruent),
        Output::Theta(f) => format!("{f}\n"),
        Output::Thetacong(r) => {
            let mut s = format!("hypotheses hold: {} ({})\n", r.hypotheses.holds, reading_name(r.reading));
            for fail in &r.hypotheses.failures {
                let _ = writeln!(s, "  {fail}");
            }
            if let (Some(c), Some(a), Some(b)) = (r.congruent, &r.theta, &r.theta_prime) {
                let _ = writeln!(s, "theta       {a}\ntheta prime {b}\ncongruent {c}");
            }
            s
        }
        Output::Moments(rows) => {
            let mut t = Table::new(&["weight", "moment"]);
            for r in rows {
                t.row(vec![labelled(&r.weight), r.moment.to_string()]);
            }
            t.render()
        }
        Output::Kummer(k) => format!("modulo p^{}: {:?}\n", k.m, k.outcome),
        Output::Proptest(r) => {
            let mut t = Table::new(&["suite", "name", "cases", "failures", "result"]);
            for s in &r.suites {
                t.row(vec![
                    s.criterion.to_string(),
                    s.name.clone(),
                    s.cases.to_string(),
                    s.failures.to_string(),
                    if s.passed() { "pass" } else { "FAIL" }.into(),
                ]);
            }
            let mut out = t.render();
            for s in r.suites.iter().filter(|s| !s.passed()) {
                for ex in &s.examples {
                    let _ = writeln!(out, "suite {}: {ex}", s.criterion);
                }
            }
            out
        }
    }
}

fn kind_name(k: muord::shimura::PieceKind) -> &'static str {
    use muord::shimura::PieceKind::*;
    match k {
        Multiplicative => "multiplicative",
        LubinTate => "lubin-tate",
        General => "general",
    }
}

fn reading_name(r: muord::weights::SimpleReading) -> &'static str {
    match r {
        muord::weights::SimpleReading::HighestSlope => "highest-slope reading",
        muord::weights::SimpleReading::LowestSlope => "lowest-slope reading",
    }
}
