//! Textual LP format.
//!
//! ```text
//! Maximize
//!  obj: x_0_0 + x_1_1
//! Subject To
//!  cap_7: x_0_7 + x_1_7 <= 1
//! Bounds
//!  0 <= xmax <= 4
//! Binary
//!  x_0_0
//! General
//!  xmax
//! End
//! ```
//!
//! Sections other than the objective and `Subject To` appear only when they
//! have content. A nonzero objective constant is written as a trailing term.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{IlpModel, ObjSense, Sense, VarId, VarKind};
use crate::error::{Error, Result};

fn write_expr(out: &mut String, model: &IlpModel, terms: &[(VarId, i64)], constant: i64) {
    let mut first = true;
    for &(v, c) in terms {
        let name = &model.variables[v].name;
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                out.push_str("- ");
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if c.abs() != 1 {
            let _ = write!(out, "{} ", c.abs());
        }
        out.push_str(name);
        first = false;
    }
    if constant != 0 || first {
        if first {
            let _ = write!(out, "{constant}");
        } else {
            let sign = if constant < 0 { "-" } else { "+" };
            let _ = write!(out, " {sign} {}", constant.abs());
        }
    }
}

pub fn export_lp(model: &IlpModel) -> String {
    let mut out = String::new();
    out.push_str(match model.objective.sense {
        ObjSense::Minimize => "Minimize\n",
        ObjSense::Maximize => "Maximize\n",
    });
    out.push_str(" obj: ");
    write_expr(&mut out, model, &model.objective.terms, model.objective.constant);
    out.push_str("\nSubject To\n");
    for row in &model.constraints {
        let _ = write!(out, " {}: ", row.name);
        write_expr(&mut out, model, &row.terms, 0);
        let _ = writeln!(out, " {} {}", row.sense, row.rhs);
    }
    let bounded: Vec<_> = model.variables.iter().filter(|v| v.kind == VarKind::Integer).collect();
    if !bounded.is_empty() {
        out.push_str("Bounds\n");
        for v in &bounded {
            let _ = writeln!(out, " {} <= {} <= {}", v.lower, v.name, v.upper);
        }
    }
    let binaries: Vec<_> = model.variables.iter().filter(|v| v.kind == VarKind::Binary).collect();
    if !binaries.is_empty() {
        out.push_str("Binary\n");
        for v in binaries {
            let _ = writeln!(out, " {}", v.name);
        }
    }
    if !bounded.is_empty() {
        out.push_str("General\n");
        for v in bounded {
            let _ = writeln!(out, " {}", v.name);
        }
    }
    out.push_str("End\n");
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Objective,
    Rows,
    Bounds,
    Binary,
    General,
    Done,
}

struct Parser {
    names: HashMap<String, VarId>,
    order: Vec<String>,
    kinds: HashMap<VarId, VarKind>,
    declared: Vec<VarId>,
    bounds: HashMap<VarId, (i64, i64)>,
}

impl Parser {
    fn var(&mut self, name: &str) -> VarId {
        if let Some(&v) = self.names.get(name) {
            return v;
        }
        let id = self.order.len();
        self.order.push(name.to_string());
        self.names.insert(name.to_string(), id);
        id
    }

    /// Parses `[-] [c] name (+|-) [c] name ... [(+|-) const]`.
    fn expr(&mut self, text: &str) -> (Vec<(VarId, i64)>, i64) {
        let mut terms: Vec<(VarId, i64)> = Vec::new();
        let mut constant = 0i64;
        let mut sign = 1i64;
        let mut coef: Option<i64> = None;
        for tok in text.split_whitespace() {
            match tok {
                "+" => sign = 1,
                "-" => sign = -1,
                _ => {
                    if let Ok(c) = tok.parse::<i64>() {
                        if let Some(prev) = coef {
                            constant += sign * prev;
                            sign = 1;
                        }
                        coef = Some(c);
                    } else {
                        let v = self.var(tok);
                        let c = sign * coef.take().unwrap_or(1);
                        match terms.iter_mut().find(|(x, _)| *x == v) {
                            Some(t) => t.1 += c,
                            None => terms.push((v, c)),
                        }
                        sign = 1;
                    }
                }
            }
        }
        if let Some(c) = coef {
            constant += sign * c;
        }
        (terms, constant)
    }
}

/// Parses the dialect written by [`export_lp`]. Network bookkeeping (arc maps,
/// search hints) is not part of the format and comes back empty.
pub fn parse_lp(text: &str) -> Result<IlpModel> {
    let mut p = Parser { names: HashMap::new(), order: Vec::new(), kinds: HashMap::new(), declared: Vec::new(), bounds: HashMap::new() };
    let mut sense = None;
    let mut objective = (Vec::new(), 0);
    let mut rows: Vec<(String, Vec<(VarId, i64)>, Sense, i64)> = Vec::new();
    let mut section = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.split('\\').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        let header = match s.to_ascii_lowercase().as_str() {
            "maximize" | "maximise" | "max" => {
                sense = Some(ObjSense::Maximize);
                Some(Section::Objective)
            }
            "minimize" | "minimise" | "min" => {
                sense = Some(ObjSense::Minimize);
                Some(Section::Objective)
            }
            "subject to" | "st" | "s.t." => Some(Section::Rows),
            "bounds" => Some(Section::Bounds),
            "binary" | "binaries" => Some(Section::Binary),
            "general" | "generals" => Some(Section::General),
            "end" => Some(Section::Done),
            _ => None,
        };
        if let Some(h) = header {
            if section == Some(Section::Done) {
                return Err(Error::parse(line, "content after End"));
            }
            section = Some(h);
            continue;
        }
        match section {
            None => return Err(Error::parse(line, "expected an objective section")),
            Some(Section::Done) => return Err(Error::parse(line, "content after End")),
            Some(Section::Objective) => {
                let body = s.split_once(':').map_or(s, |(_, b)| b);
                let (terms, c) = p.expr(body);
                objective.0.extend(terms);
                objective.1 += c;
            }
            Some(Section::Rows) => {
                let (name, body) = s
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, "constraint without a name"))?;
                let (sense, pos, width) = ["<=", ">=", "=<", "=>", "="]
                    .iter()
                    .find_map(|op| body.find(op).map(|pos| (*op, pos, op.len())))
                    .map(|(op, pos, w)| {
                        let s = match op {
                            "<=" | "=<" => Sense::Le,
                            ">=" | "=>" => Sense::Ge,
                            _ => Sense::Eq,
                        };
                        (s, pos, w)
                    })
                    .ok_or_else(|| Error::parse(line, "constraint without a sense"))?;
                let (terms, c) = p.expr(&body[..pos]);
                let rhs: i64 = body[pos + width..]
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line, "right-hand side is not an integer"))?;
                rows.push((name.trim().to_string(), terms, sense, rhs - c));
            }
            Some(Section::Bounds) => {
                let f: Vec<&str> = s.split_whitespace().collect();
                let bad = || Error::parse(line, "expected `lo <= name <= hi`");
                if f.len() != 5 || f[1] != "<=" || f[3] != "<=" {
                    return Err(bad());
                }
                let lo = f[0].parse().map_err(|_| bad())?;
                let hi = f[4].parse().map_err(|_| bad())?;
                let v = p.var(f[2]);
                p.bounds.insert(v, (lo, hi));
            }
            Some(Section::Binary) | Some(Section::General) => {
                let kind = if section == Some(Section::Binary) { VarKind::Binary } else { VarKind::Integer };
                for name in s.split_whitespace() {
                    let v = p.var(name);
                    if p.kinds.insert(v, kind).is_none() {
                        p.declared.push(v);
                    }
                }
            }
        }
    }
    if section != Some(Section::Done) {
        return Err(Error::parse(text.lines().count(), "missing End"));
    }
    let sense = sense.ok_or_else(|| Error::parse(1, "missing objective section"))?;
    // Declaration order (binaries, then generals) is creation order for
    // exported models.
    let mut order = p.declared.clone();
    let mut seen = vec![false; p.order.len()];
    order.iter().for_each(|&v| seen[v] = true);
    order.extend((0..p.order.len()).filter(|&v| !seen[v]));
    let mut new_id = vec![0; p.order.len()];
    let mut m = IlpModel::new(sense);
    for (pos, &id) in order.iter().enumerate() {
        new_id[id] = pos;
        let name = &p.order[id];
        let kind = p.kinds.get(&id).copied().unwrap_or(VarKind::Integer);
        let (lo, hi) = match (kind, p.bounds.get(&id)) {
            (VarKind::Binary, _) => (0, 1),
            (VarKind::Integer, Some(&b)) => b,
            (VarKind::Integer, None) => {
                return Err(Error::Model(format!("integer variable {name} has no finite bounds")));
            }
        };
        m.add_var(name.clone(), kind, lo, hi);
    }
    let remap = |terms: Vec<(VarId, i64)>| terms.into_iter().map(|(v, c)| (new_id[v], c)).collect::<Vec<_>>();
    m.objective.terms = remap(objective.0);
    m.objective.constant = objective.1;
    for (name, terms, sense, rhs) in rows {
        m.add_constraint(name, remap(terms), sense, rhs);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable_export() {
        let mut m = IlpModel::new(ObjSense::Maximize);
        let x = m.add_binary("x");
        m.objective.terms = vec![(x, 1)];
        let text = export_lp(&m);
        assert_eq!(text, "Maximize\n obj: x\nSubject To\nBinary\n x\nEnd\n");
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn round_trip_with_bounds_and_constant() {
        let mut m = IlpModel::new(ObjSense::Minimize);
        let a = m.add_binary("a");
        let b = m.add_binary("b");
        let z = m.add_var("z", VarKind::Integer, 0, 3);
        m.add_constraint("r1", vec![(a, 1), (b, -2), (z, 3)], Sense::Ge, -1);
        m.add_constraint("r2", vec![(a, -1), (z, 1)], Sense::Eq, 0);
        m.objective.terms = vec![(a, -1), (z, 2)];
        m.objective.constant = 6;
        let text = export_lp(&m);
        assert!(text.contains(" obj: - a + 2 z + 6\n"));
        assert!(text.contains(" r1: a - 2 b + 3 z >= -1\n"));
        let back = parse_lp(&text).unwrap();
        assert_eq!(export_lp(&back), text);
        assert_eq!(back.variables, m.variables);
        assert_eq!(back.constraints, m.constraints);
        assert_eq!(back.objective, m.objective);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_lp("Maximize\n obj: x\nSubject To\n c: x <= 1\n").is_err());
        assert!(parse_lp("Subject To\n c: x <= 1\nEnd\n").is_err());
        assert!(parse_lp("Minimize\n obj: x\nSubject To\n c: x 1\nEnd\n").is_err());
        assert!(parse_lp("Minimize\n obj: y\nSubject To\n c: y <= 4\nEnd\n").is_err());
    }
}
