//! Subcommands. Reports go to stdout as JSON, diagnostics to stderr.

use std::ffi::OsString;
use std::path::PathBuf;

use alexkit_core::alexander::AlexanderMatrix;
use alexkit_core::cyclofield::{parse_character_literal, Character};
use alexkit_core::intlinalg::{abelianization, validate_character, AbelianStructure};
use alexkit_core::jumploci::{
    almost_principal_status, almost_principal_status_matrix, bounds_report, monodromy_analysis,
    twisted_betti_on_generators, AlmostPrincipal,
};
use alexkit_core::laurent::{factor, parse_poly, FactoredPoly, LaurentPoly};
use alexkit_core::obstruct::{component_directions, position_report, qp_verdict};
use alexkit_core::seifert::{seifert_delta, seifert_delta_u, seifert_divisor, seifert_twisted_betti, SpliceData};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::io::{load_input, Input};
use crate::parallel::{alexander_poly_par, map_ordered};
use crate::report;
use crate::{AppError, AppResult};

#[derive(Debug, Parser)]
#[command(name = "alexkit", version, about = "Alexander polynomials, jump loci and quasi-projectivity tests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Abelianization, Alexander polynomial, factorization and obstruction verdict.
    Invariants {
        /// Presentation file, or matrix JSON with `--matrix`.
        input: PathBuf,
        /// Read a matrix JSON file instead of a presentation.
        #[arg(long)]
        matrix: bool,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
        /// Apply the test for projective varieties.
        #[arg(long)]
        projective: bool,
        /// Extra trial divisor for the factorization (repeatable).
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        /// Also report Δ_2, ..., Δ_k.
        #[arg(long, default_value_t = 1)]
        upto: usize,
        /// Character literal to evaluate (repeatable).
        #[arg(long = "char")]
        chars: Vec<String>,
        /// Tag recorded when the caller vouches that the Alexander ideal is almost principal.
        #[arg(long = "assert-almost-principal")]
        assert_ap: Option<String>,
    },
    /// Twisted Betti number and multiplicity bounds at one character.
    Betti {
        /// Presentation file, or matrix JSON with `--matrix`.
        input: PathBuf,
        /// Read a matrix JSON file instead of a presentation.
        #[arg(long)]
        matrix: bool,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
        /// Values on generators (presentation) or on matrix variables, e.g. `x1=-1, x2=zeta3`.
        #[arg(long = "char")]
        character: String,
        /// Report membership in the depth-k jump locus.
        #[arg(long)]
        depth: Option<usize>,
        /// Extra trial divisor for the factorization (repeatable).
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        /// Tag recorded when the caller vouches that the Alexander ideal is almost principal.
        #[arg(long = "assert-almost-principal")]
        assert_ap: Option<String>,
    },
    /// Alexander polynomial and divisor of a Seifert link.
    Seifert {
        /// Comma-separated pairwise coprime weights k_1, ..., k_n.
        #[arg(long)]
        weights: String,
        /// Number of link components.
        #[arg(long)]
        q: usize,
        /// Character on t1, ..., tq.
        #[arg(long = "char")]
        character: Option<String>,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
    },
    /// Characteristic polynomial and semisimplicity of an integer monodromy.
    Monodromy {
        /// Square integer matrix as JSON, e.g. `[[-1,1],[0,-1]]`.
        #[arg(long)]
        h: String,
        /// Indent the JSON output.
        #[arg(long)]
        pretty: bool,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(text) => Outcome { code: 0, stdout: text, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e),
        },
    }
}

fn execute(cmd: &Command) -> AppResult<String> {
    match cmd {
        Command::Invariants { input, matrix, pretty, projective, candidates, upto, chars, assert_ap } => {
            let a = Analysis::load(load_input(input, *matrix)?, candidates)?;
            let v = invariants(&a, *projective, *upto, chars, assert_ap.as_deref())?;
            Ok(report::to_text(&v, *pretty))
        }
        Command::Betti { input, matrix, pretty, character, depth, candidates, assert_ap } => {
            let a = Analysis::load(load_input(input, *matrix)?, candidates)?;
            let v = betti(&a, character, *depth, assert_ap.as_deref())?;
            Ok(report::to_text(&v, *pretty))
        }
        Command::Seifert { weights, q, character, pretty } => {
            Ok(report::to_text(&seifert(weights, *q, character.as_deref())?, *pretty))
        }
        Command::Monodromy { h, pretty } => {
            let h: Vec<Vec<i64>> = serde_json::from_str(h)
                .map_err(|e| AppError::Input(format!("monodromy matrix: {}", e)))?;
            let r = monodromy_analysis(&h)?;
            let f = factor(&r.delta, &[])?;
            Ok(report::to_text(&report::monodromy(&r, &f), *pretty))
        }
    }
}

/// Everything derived once per input.
pub struct Analysis {
    pub input: Input,
    pub matrix: AlexanderMatrix,
    pub abelian: Option<AbelianStructure>,
    pub delta: LaurentPoly,
    pub factored: Option<FactoredPoly>,
}

impl Analysis {
    pub fn load(input: Input, candidates: &[String]) -> AppResult<Self> {
        let abelian = match &input {
            Input::Presentation(p) => Some(abelianization(p)?),
            Input::Matrix(_) => None,
        };
        let matrix = input.matrix()?;
        let delta = alexander_poly_par(&matrix, 1)?;
        let cands = candidates
            .iter()
            .map(|c| parse_poly(c, matrix.var_names()))
            .collect::<alexkit_core::Result<Vec<_>>>()?;
        let factored = if delta.is_zero() { None } else { Some(factor(&delta, &cands)?) };
        Ok(Analysis { input, matrix, abelian, delta, factored })
    }

    pub fn names(&self) -> &[String] {
        self.matrix.var_names()
    }

    pub fn b1(&self) -> usize {
        self.matrix.nvars()
    }

    fn almost_principal(&self, asserted: Option<&str>) -> AppResult<AlmostPrincipal> {
        Ok(match &self.input {
            Input::Presentation(p) => almost_principal_status(p, asserted)?,
            Input::Matrix(_) => almost_principal_status_matrix(&self.matrix, asserted),
        })
    }
}

fn invariants(
    a: &Analysis,
    projective: bool,
    upto: usize,
    chars: &[String],
    asserted: Option<&str>,
) -> AppResult<Value> {
    let names = a.names();
    let mut warnings: Vec<String> = Vec::new();
    let input = match &a.input {
        Input::Presentation(p) => json!({
            "generators": p.generator_names(),
            "relators": p.relators().iter().map(|r| r.render(p.generator_names())).collect::<Vec<_>>(),
        }),
        Input::Matrix(f) => {
            warnings.push("matrix mode: almost-principal status read from the matrix shape".into());
            json!({"vars": f.vars, "rows": f.rows})
        }
    };
    let torsion = a
        .abelian
        .as_ref()
        .map(|ab| ab.torsion.iter().map(report::bigint).collect::<Vec<_>>());
    if a.delta.is_zero() {
        warnings.push("Alexander polynomial is zero".into());
    }
    if a.factored.as_ref().is_some_and(|f| f.remainder.is_some()) {
        warnings.push("unresolved factors: pointwise bounds are lower-confidence".into());
    }
    let q = qp_verdict(&a.delta, a.b1(), projective)?;
    let pos = match &a.factored {
        Some(f) => {
            let dirs = component_directions(f);
            Some(position_report(&dirs, a.b1())?)
        }
        None => None,
    };
    let mut deltas = Vec::new();
    for i in 2..=upto {
        let d = alexander_poly_par(&a.matrix, i)?;
        deltas.push(json!({"i": i, "delta": d.render(names)}));
    }
    let results = map_ordered(chars, |c| betti(a, c, None, asserted));
    let characters = results.into_iter().collect::<AppResult<Vec<_>>>()?;
    Ok(json!({
        "kind": match a.input { Input::Presentation(_) => "presentation", Input::Matrix(_) => "matrix" },
        "input": input,
        "b1": a.b1(),
        "torsion": torsion,
        "variables": names,
        "delta": a.delta.render(names),
        "delta_factored": a.factored.as_ref().map(|f| f.render(names)),
        "factorization": a.factored.as_ref().map(|f| report::factored(f, names)),
        "higher_deltas": deltas,
        "almost_principal": report::almost_principal(&a.almost_principal(asserted)?),
        "qp": report::qp(&q, pos.as_ref()),
        "characters": characters,
        "warnings": warnings,
    }))
}

fn betti(a: &Analysis, literal: &str, depth: Option<usize>, asserted: Option<&str>) -> AppResult<Value> {
    if depth == Some(0) {
        return Err(AppError::Input("depth must be positive".into()));
    }
    let mut notes: Vec<String> = Vec::new();
    // the character in torus coordinates, when it lies in the identity component
    let (shown, torus): (String, Option<Character>) = match &a.input {
        Input::Presentation(p) => {
            let chi = parse_character_literal(literal, p.generator_names())?;
            if !validate_character(p, &chi)? {
                return Err(AppError::Input("character does not satisfy the relators".into()));
            }
            let ab = a.abelian.as_ref().expect("presentation input");
            let t = ab.torus_coordinates(&chi)?.map(Character::new).transpose()?;
            if t.is_none() {
                notes.push("character outside the identity component: no bounds".into());
                let b1 = twisted_betti_on_generators(p, &chi)?;
                return Ok(finish(chi.render(p.generator_names()), None, b1, None, depth, notes));
            }
            (chi.render(p.generator_names()), t)
        }
        Input::Matrix(_) => {
            let chi = parse_character_literal(literal, a.names())?;
            (chi.render(a.names()), Some(chi))
        }
    };
    let rho = torus.expect("identity component");
    if rho.is_trivial() {
        notes.push("trivial character: b1 of the group".into());
        return Ok(finish(shown, Some(&rho), a.b1(), None, depth, notes));
    }
    let Some(f) = &a.factored else {
        notes.push("Alexander polynomial is zero: bounds undefined".into());
        let b1 = alexkit_core::jumploci::twisted_betti(&a.matrix, &rho)?;
        return Ok(finish(shown, Some(&rho), b1, None, depth, notes));
    };
    let rep = bounds_report(&a.matrix, f, &rho, a.almost_principal(asserted)?)?;
    if rep.lower_confidence {
        notes.push("unresolved factors: pointwise bound is lower-confidence".into());
    }
    let b1 = rep.b1;
    Ok(finish(shown, Some(&rho), b1, Some(report::betti(&rep)), depth, notes))
}

fn finish(
    shown: String,
    torus: Option<&Character>,
    b1: usize,
    bounds: Option<Value>,
    depth: Option<usize>,
    notes: Vec<String>,
) -> Value {
    let names: Vec<String> = torus.map_or(Vec::new(), |t| {
        alexkit_core::laurent::default_var_names(t.len())
    });
    json!({
        "character": shown,
        "torus_point": torus.map(|t| t.render(&names)),
        "b1": b1,
        "bounds": bounds,
        "membership": depth.map(|k| json!({"depth": k, "member": b1 >= k})),
        "notes": notes,
    })
}

fn seifert(weights: &str, q: usize, character: Option<&str>) -> AppResult<Value> {
    let ws = weights
        .split(',')
        .map(|w| w.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| AppError::Input(format!("weights must be positive integers, got `{}`", weights)))?;
    let d = SpliceData::new(ws, q)?;
    let names = alexkit_core::laurent::default_var_names(q);
    let delta = seifert_delta(&d)?;
    let betti = match character {
        Some(lit) => {
            let rho = parse_character_literal(lit, &names)?;
            Some(json!({
                "character": rho.render(&names),
                "b1": seifert_twisted_betti(&d, &rho.values)?,
            }))
        }
        None => None,
    };
    let q_rep = qp_verdict(&delta, q, false)?;
    Ok(json!({
        "weights": d.weights(),
        "q": q,
        "direction": d.direction(),
        "n_prime": d.n_prime(),
        "s": d.s(),
        "delta": delta.render(&names),
        "delta_u": seifert_delta_u(&d)?.render(&["u".to_string()]),
        "divisor": report::divisor(&seifert_divisor(&d)),
        "betti": betti,
        "qp": report::qp(&q_rep, None),
    }))
}
