//! The sectioned presentation format.
//!
//! ```text
//! # comment
//! [generators]
//! a = 1
//! x = 4
//! [differential]
//! x = [[b,a],c]
//! [relations]
//! r = [a,[a,b]]
//! [cutoffs]
//! deg = 8
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use lieq::dgl::Dgl;
use lieq::lie::{parse_expr, ExprError, Gen, GeneratorError, GeneratorSet, LieElement};
use lieq::models::GLPresentation;

/// A diagnostic with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Connectedness,
    Degree,
    UnknownName,
    Duplicate,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Connectedness => "connectedness",
            ParseErrorKind::Degree => "degree",
            ParseErrorKind::UnknownName => "unknown-name",
            ParseErrorKind::Duplicate => "duplicate",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Cutoffs {
    pub deg: Option<u32>,
    pub filt: Option<u32>,
    pub simp: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: GeneratorSet,
    pub differential: Vec<(Gen, LieElement<Gen>)>,
    pub relations: Vec<(String, LieElement<Gen>)>,
    pub cutoffs: Cutoffs,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Generators,
    Differential,
    Relations,
    Cutoffs,
}

fn err(line: usize, column: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError { line, column, kind, message: message.into() }
}

fn col_of(raw: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - raw.as_ptr() as usize;
    raw[..offset].chars().count() + 1
}

pub fn parse(src: &str) -> Result<Presentation, ParseError> {
    let mut section = None;
    let mut generators = GeneratorSet::default();
    let mut differential: Vec<(Gen, LieElement<Gen>)> = Vec::new();
    let mut relations: Vec<(String, LieElement<Gen>)> = Vec::new();
    let mut cutoffs = Cutoffs::default();
    // Expressions are evaluated once all generators are known.
    let mut pending: Vec<(usize, Section, String, usize, String, usize)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let line = body.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') && !line.contains('=') {
            section = Some(match line[1..line.len() - 1].trim() {
                "generators" => Section::Generators,
                "differential" => Section::Differential,
                "relations" => Section::Relations,
                "cutoffs" => Section::Cutoffs,
                other => {
                    return Err(err(ln, col_of(raw, line), ParseErrorKind::Syntax, format!("unknown section `[{other}]`")))
                }
            });
            continue;
        }
        let Some(sec) = section else {
            return Err(err(ln, col_of(raw, line), ParseErrorKind::Syntax, "line outside of any section"));
        };
        let Some(eq) = line.find('=') else {
            return Err(err(ln, col_of(raw, line), ParseErrorKind::Syntax, "expected `name = value`"));
        };
        let name = line[..eq].trim();
        let value = line[eq + 1..].trim();
        let (name_col, value_col) = (col_of(raw, name), col_of(raw, value) + usize::from(value.is_empty()));
        if name.is_empty() {
            return Err(err(ln, name_col, ParseErrorKind::Syntax, "missing name before `=`"));
        }
        if value.is_empty() {
            return Err(err(ln, value_col, ParseErrorKind::Syntax, format!("missing value for `{name}`")));
        }
        match sec {
            Section::Generators => {
                let degree: u32 = value.parse().map_err(|_| {
                    err(ln, value_col, ParseErrorKind::Syntax, format!("degree of `{name}` must be a nonnegative integer, got `{value}`"))
                })?;
                generators.push(name, degree).map_err(|e| match e {
                    GeneratorError::DegreeZero(_) => err(ln, value_col, ParseErrorKind::Connectedness, e.to_string()),
                    GeneratorError::Duplicate(_) => err(ln, name_col, ParseErrorKind::Duplicate, e.to_string()),
                    GeneratorError::BadName(_) => err(ln, name_col, ParseErrorKind::Syntax, e.to_string()),
                })?;
            }
            Section::Cutoffs => {
                let v: u32 = value
                    .parse()
                    .map_err(|_| err(ln, value_col, ParseErrorKind::Syntax, format!("cutoff `{name}` must be a nonnegative integer")))?;
                match name {
                    "deg" => cutoffs.deg = Some(v),
                    "filt" => cutoffs.filt = Some(v),
                    "simp" => cutoffs.simp = Some(v),
                    _ => {
                        return Err(err(ln, name_col, ParseErrorKind::Syntax, format!("unknown cutoff `{name}` (expected deg, filt or simp)")))
                    }
                }
            }
            Section::Differential | Section::Relations => {
                pending.push((ln, sec, name.to_string(), name_col, value.to_string(), value_col));
            }
        }
    }
    for (ln, sec, name, name_col, value, value_col) in pending {
        let expr = parse_expr(&value).map_err(|e| match e {
            ExprError::Syntax { col, msg } => err(ln, value_col + col - 1, ParseErrorKind::Syntax, msg),
            other => err(ln, value_col, ParseErrorKind::Syntax, other.to_string()),
        })?;
        let e = expr.eval(&|n| generators.get(n).cloned()).map_err(|e| match e {
            ExprError::UnknownName(n) => {
                let c = value.find(n.as_str()).map_or(value_col, |i| value_col + value[..i].chars().count());
                err(ln, c, ParseErrorKind::UnknownName, format!("unknown name `{n}`"))
            }
            other => err(ln, value_col, ParseErrorKind::Syntax, other.to_string()),
        })?;
        if sec == Section::Relations {
            if relations.iter().any(|(r, _)| *r == name) {
                return Err(err(ln, name_col, ParseErrorKind::Duplicate, format!("duplicate relation `{name}`")));
            }
            relations.push((name, e));
            continue;
        }
        let Some(g) = generators.get(&name).cloned() else {
            return Err(err(ln, name_col, ParseErrorKind::UnknownName, format!("`{name}` is not a generator")));
        };
        if differential.iter().any(|(h, _)| *h == g) {
            return Err(err(ln, name_col, ParseErrorKind::Duplicate, format!("second differential for `{name}`")));
        }
        if !e.is_zero() {
            let expected = g.degree - 1;
            if !e.is_homogeneous() || e.degree() != Some(expected) {
                let found = if e.is_homogeneous() {
                    format!("degree {}", e.degree().unwrap_or(0))
                } else {
                    "mixed degrees".to_string()
                };
                return Err(err(
                    ln,
                    value_col,
                    ParseErrorKind::Degree,
                    format!("∂{name} must have degree {expected} = |{name}| - 1, but `{value}` has {found}"),
                ));
            }
        }
        differential.push((g, e));
    }
    Ok(Presentation { generators, differential, relations, cutoffs })
}

impl Presentation {
    pub fn dgl(&self, cutoff: u32) -> Result<Dgl<Gen>, lieq::dgl::DglError> {
        let diff: BTreeMap<Gen, LieElement<Gen>> = self.differential.iter().cloned().collect();
        Dgl::new(self.generators.gens().to_vec(), diff, cutoff)
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_empty()
    }

    pub fn gl_presentation(&self, cutoff: u32) -> Result<GLPresentation, lieq::models::ModelError> {
        GLPresentation::new(self.generators.clone(), self.relations.iter().map(|(_, r)| r.clone()).collect(), cutoff)
    }

    /// The normalized text form; parsing it gives back an equal presentation.
    pub fn to_text(&self) -> String {
        let mut s = String::from("[generators]\n");
        for g in self.generators.gens() {
            s.push_str(&format!("{} = {}\n", g.name, g.degree));
        }
        let nonzero: Vec<_> = self.differential.iter().filter(|(_, e)| !e.is_zero()).collect();
        if !nonzero.is_empty() {
            s.push_str("\n[differential]\n");
            for (g, e) in nonzero {
                s.push_str(&format!("{} = {}\n", g.name, e.render()));
            }
        }
        if !self.relations.is_empty() {
            s.push_str("\n[relations]\n");
            for (n, e) in &self.relations {
                s.push_str(&format!("{n} = {}\n", e.render()));
            }
        }
        let c = self.cutoffs;
        if c != Cutoffs::default() {
            s.push_str("\n[cutoffs]\n");
            for (k, v) in [("deg", c.deg), ("filt", c.filt), ("simp", c.simp)] {
                if let Some(v) = v {
                    s.push_str(&format!("{k} = {v}\n"));
                }
            }
        }
        s
    }

    /// Same generators, nonzero differentials, relations and cutoffs.
    pub fn equivalent(&self, other: &Presentation) -> bool {
        let nz = |p: &Presentation| -> Vec<(Gen, LieElement<Gen>)> {
            p.differential.iter().filter(|(_, e)| !e.is_zero()).cloned().collect()
        };
        self.generators == other.generators
            && nz(self) == nz(other)
            && self.relations == other.relations
            && self.cutoffs == other.cutoffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SECONDARY: &str = "\
[generators]
a = 1
b = 1
c = 1
d = 1
x = 4
y = 4
z = 4
w = 4

[differential]
x = [[b,a],c]
y = [[b,a],d]
z = [[d,c],a]
w = [[d,c],b]
";

    #[test]
    fn parses_the_secondary_product() {
        let p = parse(SECONDARY).unwrap();
        assert_eq!(p.generators.len(), 8);
        let d = p.dgl(6).unwrap();
        assert!(d.validate().is_valid());
        let back = parse(&p.to_text()).unwrap();
        assert!(back.equivalent(&p));
    }

    #[test]
    fn rejects_degree_zero() {
        let e = parse("[generators]\ne = 0\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Connectedness);
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("connectedness"));
    }

    #[test]
    fn rejects_degree_inconsistent_differentials() {
        let src = "[generators]\na = 1\nb = 3\nx = 4\n[differential]\nx = [a,b]\n";
        let e = parse(src).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Degree);
        assert_eq!(e.line, 6);
        assert!(e.message.contains("degree 3"), "{}", e.message);
    }

    #[test]
    fn positions_of_syntax_and_name_errors() {
        let e = parse("[generators]\na = 1\nx = 2\n[differential]\nx = [a,\n").unwrap_err();
        assert_eq!((e.kind, e.line), (ParseErrorKind::Syntax, 5));
        assert_eq!(e.column, 8);
        let e = parse("[generators]\na = 1\nx = 2\n[differential]\nx = [a, q]\n").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::UnknownName, 5, 9));
        let e = parse("a = 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        let e = parse("[generators]\na = 1\n[cutoffs]\ndepth = 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 1));
    }

    #[test]
    fn comments_relations_and_cutoffs() {
        let src = "# free on two\n[generators]\na = 1 # odd\nb = 2\n[relations]\nr = [a,[a,b]]\n[cutoffs]\ndeg = 5\nfilt = 2\n";
        let p = parse(src).unwrap();
        assert!(p.has_relations());
        assert_eq!(p.cutoffs, Cutoffs { deg: Some(5), filt: Some(2), simp: None });
        assert!(parse(&p.to_text()).unwrap().equivalent(&p));
    }
}
