//! The line-oriented input format.
//!
//! ```text
//! # comment
//! cluster C
//! point 1 root
//! point 2 parent 1
//! point 3 parent 2 satellite 1
//! divisor D on C values 2 3 5
//! ideal J on C mults 2 1 1
//! ideal K on C values 1 2 3
//! monomial A gens 5,0 2,1 0,4
//! certificate R target J companion I c 3/2
//! ```

use std::fmt::{self, Write as _};

use complete_ideals::{parse_rational, Exponent};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    Root,
    Parent { parent: usize, satellite: Option<usize> },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IdealData {
    Mults,
    Values,
}

impl IdealData {
    fn keyword(self) -> &'static str {
        match self {
            IdealData::Mults => "mults",
            IdealData::Values => "values",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Cluster {
        name: String,
        points: Vec<PointSpec>,
    },
    Divisor {
        name: String,
        cluster: String,
        values: Vec<i64>,
    },
    Ideal {
        name: String,
        cluster: String,
        data: IdealData,
        entries: Vec<i64>,
    },
    Monomial {
        name: String,
        gens: Vec<(u64, u64)>,
    },
    /// `J` pulled back to the companion's cluster equals `𝒥(I^c)`.
    Certificate {
        name: String,
        target: String,
        companion: String,
        c: Exponent,
    },
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Cluster { name, .. }
            | Item::Divisor { name, .. }
            | Item::Ideal { name, .. }
            | Item::Monomial { name, .. }
            | Item::Certificate { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Item::Cluster { .. } => "cluster",
            Item::Divisor { .. } => "divisor",
            Item::Ideal { .. } => "ideal",
            Item::Monomial { .. } => "monomial",
            Item::Certificate { .. } => "certificate",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == name)
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    /// Canonical text; `parse(emit(d)) == d`.
    pub fn emit(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Cluster { name, points } => {
                    writeln!(f, "cluster {name}")?;
                    for (i, p) in points.iter().enumerate() {
                        match p {
                            PointSpec::Root => writeln!(f, "point {} root", i + 1)?,
                            PointSpec::Parent { parent, satellite: None } => {
                                writeln!(f, "point {} parent {parent}", i + 1)?
                            }
                            PointSpec::Parent { parent, satellite: Some(s) } => {
                                writeln!(f, "point {} parent {parent} satellite {s}", i + 1)?
                            }
                        }
                    }
                }
                Item::Divisor { name, cluster, values } => {
                    writeln!(f, "divisor {name} on {cluster} values{}", join(values))?
                }
                Item::Ideal { name, cluster, data, entries } => {
                    writeln!(f, "ideal {name} on {cluster} {}{}", data.keyword(), join(entries))?
                }
                Item::Monomial { name, gens } => {
                    write!(f, "monomial {name} gens")?;
                    for (a, b) in gens {
                        write!(f, " {a},{b}")?;
                    }
                    writeln!(f)?;
                }
                Item::Certificate { name, target, companion, c } => {
                    writeln!(f, "certificate {name} target {target} companion {companion} c {c}")?
                }
            }
        }
        Ok(())
    }
}

fn join(v: &[i64]) -> String {
    let mut s = String::new();
    for x in v {
        let _ = write!(s, " {x}");
    }
    s
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end: usize,
    pos: usize,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in content.char_indices().chain([(content.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token { text: &content[s..i], column: content[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        Line { number, tokens, end: content.trim_end().chars().count() + 1, pos: 0 }
    }

    fn err_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let column = self.tokens.get(self.pos).map_or(self.end, |t| t.column);
        self.err_at(column, message)
    }

    fn token(&mut self, what: &str) -> Result<(&'a str, usize), ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok((t.text, t.column))
            }
            None => Err(self.err(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (t, col) = self.token(&format!("`{kw}`"))?;
        if t == kw {
            Ok(())
        } else {
            Err(self.err_at(col, format!("expected `{kw}`, found `{t}`")))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        let (t, col) = self.token("a name")?;
        let mut chars = t.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.');
        if ok {
            Ok(t.to_string())
        } else {
            Err(self.err_at(col, format!("invalid name `{t}`")))
        }
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        let (t, col) = self.token(what)?;
        t.parse().map_err(|_| self.err_at(col, format!("expected {what}, found `{t}`")))
    }

    fn rest<T>(&mut self, mut f: impl FnMut(&str) -> Option<T>, what: &str) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.tokens.len() {
            let (t, col) = self.token(what)?;
            out.push(f(t).ok_or_else(|| self.err_at(col, format!("expected {what}, found `{t}`")))?);
        }
        if out.is_empty() {
            return Err(self.err(format!("expected {what}")));
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) => Err(self.err_at(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

pub fn parse(input: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    // index into doc.items of the cluster currently receiving points
    let mut open: Option<usize> = None;
    for (i, raw) in input.lines().enumerate() {
        let mut line = Line::new(i + 1, raw);
        if line.tokens.is_empty() {
            continue;
        }
        let (head, head_col) = line.token("a statement")?;
        let item = match head {
            "point" => {
                let Some(idx) = open else {
                    return Err(line.err_at(head_col, "`point` outside a cluster block"));
                };
                let Item::Cluster { points, .. } = &mut doc.items[idx] else { unreachable!() };
                let (id_text, id_col) = line.token("a point id")?;
                let id: usize = id_text
                    .parse()
                    .map_err(|_| line.err_at(id_col, format!("expected a point id, found `{id_text}`")))?;
                if id != points.len() + 1 {
                    return Err(line.err_at(id_col, format!("expected point {}, found {id}", points.len() + 1)));
                }
                let (kind, kind_col) = line.token("`root` or `parent`")?;
                let spec = match kind {
                    "root" => PointSpec::Root,
                    "parent" => {
                        let parent = line.number("a parent id")?;
                        let satellite = if line.pos < line.tokens.len() {
                            line.keyword("satellite")?;
                            Some(line.number("a satellite id")?)
                        } else {
                            None
                        };
                        PointSpec::Parent { parent, satellite }
                    }
                    other => return Err(line.err_at(kind_col, format!("expected `root` or `parent`, found `{other}`"))),
                };
                line.finish()?;
                points.push(spec);
                continue;
            }
            "cluster" => {
                let name = line.name()?;
                line.finish()?;
                open = Some(doc.items.len());
                doc.push(Item::Cluster { name, points: Vec::new() });
                continue;
            }
            "divisor" => {
                let name = line.name()?;
                line.keyword("on")?;
                let cluster = line.name()?;
                line.keyword("values")?;
                let values = line.rest(|t| t.parse().ok(), "an integer")?;
                Item::Divisor { name, cluster, values }
            }
            "ideal" => {
                let name = line.name()?;
                line.keyword("on")?;
                let cluster = line.name()?;
                let (kw, col) = line.token("`mults` or `values`")?;
                let data = match kw {
                    "mults" => IdealData::Mults,
                    "values" => IdealData::Values,
                    other => return Err(line.err_at(col, format!("expected `mults` or `values`, found `{other}`"))),
                };
                let entries = line.rest(|t| t.parse().ok(), "an integer")?;
                Item::Ideal { name, cluster, data, entries }
            }
            "monomial" => {
                let name = line.name()?;
                line.keyword("gens")?;
                let gens = line.rest(
                    |t| {
                        let (a, b) = t.split_once(',')?;
                        Some((a.parse().ok()?, b.parse().ok()?))
                    },
                    "an exponent pair `a,b`",
                )?;
                Item::Monomial { name, gens }
            }
            "certificate" => {
                let name = line.name()?;
                line.keyword("target")?;
                let target = line.name()?;
                line.keyword("companion")?;
                let companion = line.name()?;
                line.keyword("c")?;
                let (t, col) = line.token("an exponent")?;
                let c = parse_rational(t)
                    .ok()
                    .and_then(|r| Exponent::new(r).ok())
                    .ok_or_else(|| line.err_at(col, format!("expected a positive rational, found `{t}`")))?;
                line.finish()?;
                Item::Certificate { name, target, companion, c }
            }
            other => return Err(line.err_at(head_col, format!("unknown statement `{other}`"))),
        };
        open = None;
        doc.push(item);
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# two points\ncluster C\npoint 1 root\n  point 2 parent 1   # free\n\
                    ideal J on C mults 2 1\nmonomial A gens 2,0 0,3\ncertificate R target J companion J c 3/2\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.items.len(), 4);
        assert_eq!(
            doc.items[0],
            Item::Cluster {
                name: "C".into(),
                points: vec![PointSpec::Root, PointSpec::Parent { parent: 1, satellite: None }]
            }
        );
        assert_eq!(parse(&doc.emit()).unwrap(), doc);
    }

    #[test]
    fn reports_positions() {
        let e = parse("cluster C\npoint 1 root\npoint 2 satellite 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));
        let e = parse("point 1 root").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse("divisor D on C values 1 x 3").unwrap_err();
        assert_eq!((e.line, e.column), (1, 25));
        let e = parse("divisor D on C values").unwrap_err();
        assert_eq!((e.line, e.column), (1, 22));
        let e = parse("cluster C\npoint 2 root").unwrap_err();
        assert_eq!(e.to_string(), "line 2, column 7: expected point 1, found 2");
        assert!(parse("certificate R target J companion I c -1").is_err());
    }
}
