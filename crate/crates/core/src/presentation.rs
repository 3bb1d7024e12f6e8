//! Finite group presentations and free-group words.
//!
//! Text format, one directive per line:
//!
//! ```text
//! # comment
//! gens: x y
//! rel: x y x^-1 y^-1
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// A freely reduced word: `(generator index, nonzero exponent)` letters with
/// no two adjacent letters on the same generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<(usize, i32)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Build and freely reduce.
    pub fn new(letters: Vec<(usize, i32)>) -> Self {
        free_reduce(&Word { letters })
    }

    pub fn generator(i: usize) -> Self {
        Word {
            letters: alloc::vec![(i, 1)],
        }
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as u64).sum()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, o: &Word) -> Self {
        let mut l = self.letters.clone();
        l.extend_from_slice(&o.letters);
        Word::new(l)
    }

    /// `w · self · w⁻¹`
    pub fn conjugate_by(&self, w: &Word) -> Self {
        w.concat(self).concat(&w.inverse())
    }

    /// Exponent sum per generator.
    pub fn exponent_vector(&self, m: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; m];
        for &(g, e) in &self.letters {
            v[g] += e as i64;
        }
        v
    }

    pub fn render(&self, names: &[String]) -> String {
        self.letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The freely reduced representative of `w`.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<(usize, i32)> = Vec::with_capacity(w.letters.len());
    for &(g, e) in &w.letters {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    Word { letters: out }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    /// Relators are freely reduced; generator indices must be in range.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let m = generator_names.len();
        for r in &relators {
            if let Some(&(g, _)) = r.letters.iter().find(|(g, _)| *g >= m) {
                return Err(Error::Dimension(format!(
                    "relator uses generator index {} but only {} generators exist",
                    g, m
                )));
            }
        }
        Ok(GroupPresentation {
            generator_names,
            relators: relators.iter().map(free_reduce).collect(),
        })
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Canonical text form; `parse_presentation(p.render()) == p`.
    pub fn render(&self) -> String {
        let mut s = format!("gens: {}\n", self.generator_names.join(" "));
        for r in &self.relators {
            s.push_str("rel:");
            if !r.is_empty() {
                s.push(' ');
                s.push_str(&r.render(&self.generator_names));
            }
            s.push('\n');
        }
        s
    }

    /// Relator exponent-sum matrix (`h × m`).
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.num_generators();
        self.relators.iter().map(|r| r.exponent_vector(m)).collect()
    }
}

/// `m - h`, a lower bound for the deficiency of the group.
pub fn deficiency_lower_bound(p: &GroupPresentation) -> i64 {
    p.num_generators() as i64 - p.relators.len() as i64
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out.into_iter()
        .map(|(st, t)| (offset + s[..st].chars().count() + 1, t))
        .collect()
}

pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let line = lno + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let lead = body.len() - body.trim_start().len();
        let trimmed = body.trim_start();
        let col0 = body[..lead].chars().count() + 1;
        let (kw, rest) = match trimmed.split_once(':') {
            Some((k, r)) => (k.trim(), r),
            None => return Err(syntax(line, col0, "expected `gens:` or `rel:`")),
        };
        let rest_offset = body[..lead].chars().count() + trimmed[..trimmed.len() - rest.len()].chars().count();
        match kw {
            "gens" => {
                if names.is_some() {
                    return Err(syntax(line, col0, "duplicate `gens:` line"));
                }
                let mut ns: Vec<String> = Vec::new();
                for (col, t) in tokens(rest, rest_offset) {
                    if !valid_name(t) {
                        return Err(syntax(line, col, format!("invalid generator name `{}`", t)));
                    }
                    if ns.iter().any(|n| n == t) {
                        return Err(syntax(line, col, format!("generator `{}` declared twice", t)));
                    }
                    ns.push(t.to_string());
                }
                if ns.is_empty() {
                    return Err(syntax(line, col0, "no generators declared"));
                }
                names = Some(ns);
            }
            "rel" => {
                let Some(ns) = names.as_ref() else {
                    return Err(syntax(line, col0, "`rel:` before `gens:`"));
                };
                let mut letters = Vec::new();
                for (col, t) in tokens(rest, rest_offset) {
                    let (name, exp) = match t.split_once('^') {
                        Some((n, e)) => {
                            let e = e.trim_start_matches('(').trim_end_matches(')');
                            let v: i32 = e.parse().map_err(|_| {
                                syntax(line, col, format!("invalid exponent in `{}`", t))
                            })?;
                            (n, v)
                        }
                        None => (t, 1),
                    };
                    if !valid_name(name) {
                        return Err(syntax(line, col, format!("invalid letter `{}`", t)));
                    }
                    let g = ns
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::UndeclaredName(name.to_string()))?;
                    if exp == 0 {
                        return Err(Error::ZeroExponent(t.to_string()));
                    }
                    letters.push((g, exp));
                }
                relators.push(Word::new(letters));
            }
            other => {
                return Err(syntax(line, col0, format!("unknown directive `{}`", other)));
            }
        }
    }
    let names = names.ok_or_else(|| syntax(1, 1, "missing `gens:` line"))?;
    GroupPresentation::new(names, relators)
}
