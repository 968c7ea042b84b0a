//! Scenario files: declarations in the algebra grammar plus `scenario`, `field`,
//! `budget` and `run` directive lines.

use std::fmt;
use std::path::Path;

use conevanish_core::parse::{parse_document_with_field, Statement};
use conevanish_core::{AlgebraError, Field};
use rayon::prelude::*;

use crate::commands::{execute, Env, Invocation, NAME_KEYS};
use crate::report::Report;

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub field: Option<Field>,
    pub budget_pairs: Option<u64>,
    pub env: Env,
    pub invocations: Vec<Invocation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ScenarioError {}

impl ScenarioError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line, column: 1, message: message.into() }
    }
}

impl From<AlgebraError> for ScenarioError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Syntax { line, column, message } => Self { line, column, message },
            other => Self { line: 0, column: 0, message: other.to_string() },
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// The field named by the first `field` line, if any.
fn declared_field(src: &str) -> Result<Option<Field>, ScenarioError> {
    for (k, raw) in src.lines().enumerate() {
        let mut words = strip_comment(raw).split_whitespace();
        if words.next() == Some("field") {
            let f = words.next().ok_or_else(|| ScenarioError::at(k + 1, "`field` needs a value"))?;
            let f = if f == "Fp" { "F31" } else { f };
            return f.parse().map(Some).map_err(|e: AlgebraError| ScenarioError::at(k + 1, e.to_string()));
        }
    }
    Ok(None)
}

/// Rebuilds `key=value` pairs from directive tokens, which arrive split at `=` and `-`.
fn invocation_from_tokens(tokens: &[String], line: usize) -> Result<Invocation, ScenarioError> {
    let mut inv = Invocation::new(&[]);
    let mut k = 0;
    while k < tokens.len() {
        let key = &tokens[k];
        if tokens.get(k + 1).map(String::as_str) == Some("=") {
            let mut value = String::new();
            let mut j = k + 2;
            if tokens.get(j).map(String::as_str) == Some("-") {
                value.push('-');
                j += 1;
            }
            let v = tokens.get(j).ok_or_else(|| ScenarioError::at(line, format!("`{key}=` needs a value")))?;
            value.push_str(v);
            // comma-separated lists such as keep=x,y
            j += 1;
            while tokens.get(j).map(String::as_str) == Some(",") {
                let next = tokens.get(j + 1).ok_or_else(|| ScenarioError::at(line, "dangling `,`"))?;
                value.push(',');
                value.push_str(next);
                j += 2;
            }
            if inv.args.insert(key.clone(), value).is_some() {
                return Err(ScenarioError::at(line, format!("argument `{key}` given twice")));
            }
            k = j;
        } else if inv.args.is_empty() {
            // hyphenated command words such as fiber-cone
            match (key.as_str(), inv.command.last_mut(), tokens.get(k + 1)) {
                ("-", Some(prev), Some(next)) => {
                    prev.push('-');
                    prev.push_str(next);
                    k += 2;
                }
                _ => {
                    inv.command.push(key.clone());
                    k += 1;
                }
            }
        } else {
            return Err(ScenarioError::at(line, format!("unexpected token `{key}`")));
        }
    }
    if inv.command.is_empty() {
        return Err(ScenarioError::at(line, "`run` needs a command"));
    }
    Ok(inv)
}

impl Scenario {
    /// Parses scenario text. `field_override` beats any `field` line.
    pub fn parse(src: &str, default_name: &str, field_override: Option<Field>) -> Result<Self, ScenarioError> {
        let field = match field_override {
            Some(f) => Some(f),
            None => declared_field(src)?,
        };
        let doc = parse_document_with_field(src, field)?;
        let mut sc = Scenario {
            name: default_name.to_string(),
            field,
            budget_pairs: None,
            env: Env { field, ..Env::default() },
            invocations: Vec::new(),
        };
        for st in &doc.statements {
            match st {
                Statement::Ideal(n) => {
                    let i = doc.ideal(n).expect("declared ideal").clone();
                    sc.env.insert_ideal(n, i);
                }
                Statement::Poly(n) => {
                    sc.env.polys.insert(n.clone(), doc.poly(n).expect("declared polynomial").clone());
                }
                Statement::Map(n) => {
                    sc.env.maps.insert(n.clone(), doc.map(n).expect("declared map").clone());
                }
                Statement::Ring(_) => {}
                Statement::Directive(k) => {
                    let d = &doc.directives[*k];
                    match d.keyword.as_str() {
                        "scenario" => match d.args.as_slice() {
                            [name] => sc.name = name.clone(),
                            _ => return Err(ScenarioError::at(d.line, "`scenario` takes one name")),
                        },
                        "field" => {}
                        "budget" => match d.args.as_slice() {
                            [kind, n] if kind == "pairs" => {
                                let n: u64 = n.parse().map_err(|_| ScenarioError::at(d.line, format!("bad budget `{n}`")))?;
                                if n == 0 {
                                    return Err(ScenarioError::at(d.line, "budgets must be positive"));
                                }
                                sc.budget_pairs = Some(n);
                            }
                            _ => return Err(ScenarioError::at(d.line, "expected `budget pairs N`")),
                        },
                        "run" => {
                            let inv = invocation_from_tokens(&d.args, d.line)?;
                            for key in NAME_KEYS {
                                if let Some(v) = inv.args.get(key) {
                                    if !sc.env.knows(v) {
                                        return Err(ScenarioError::at(d.line, format!("`{v}` is not declared before use")));
                                    }
                                }
                            }
                            sc.invocations.push(inv);
                        }
                        other => return Err(ScenarioError::at(d.line, format!("unknown directive `{other}`"))),
                    }
                }
            }
        }
        // Invocations see every declaration; the check above only enforces ordering.
        Ok(sc)
    }

    pub fn from_path(path: &Path, field_override: Option<Field>) -> Result<Self, ScenarioError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError { line: 0, column: 0, message: format!("{}: {e}", path.display()) })?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        Self::parse(&src, stem, field_override)
    }

    /// Runs every invocation. With `parallel` they run concurrently but the report order is fixed.
    pub fn run(&self, parallel: bool) -> Report {
        if let Some(b) = self.budget_pairs {
            conevanish_core::groebner::set_default_pair_budget(b);
        }
        let outcomes = if parallel {
            self.invocations.par_iter().map(|inv| execute(inv, &self.env)).collect()
        } else {
            self.invocations.iter().map(|inv| execute(inv, &self.env)).collect()
        };
        Report::new(&self.name, self.field, outcomes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn rebuilds_pairs() {
        let inv = invocation_from_tokens(&toks("cohomology ideal = E i = 1 twist = - 2 keep = x , y"), 3).unwrap();
        assert_eq!(inv.command, vec!["cohomology"]);
        let fc = invocation_from_tokens(&toks("fiber - cone base = B center = C"), 2).unwrap();
        assert_eq!(fc.command, vec!["fiber-cone"]);
        assert_eq!(inv.args["twist"], "-2");
        assert_eq!(inv.args["keep"], "x,y");
        assert!(invocation_from_tokens(&toks("gb ideal = I stray"), 1).is_err());
        assert!(invocation_from_tokens(&toks("gb ideal = I ideal = J"), 1).is_err());
    }

    #[test]
    fn use_before_declaration_is_rejected() {
        let src = "run gb ideal=I\nring Q[x,y] grevlex\nideal I = x*y;\n";
        let e = Scenario::parse(src, "t", None).unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn field_line_applies_to_rings() {
        let src = "field F31\nring Q[x,y] grevlex\nideal I = x - y;\n";
        let sc = Scenario::parse(src, "t", None).unwrap();
        assert_eq!(sc.env.ideals["I"].ring().field().to_string(), "F31");
    }
}
