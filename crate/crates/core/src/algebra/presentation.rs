//! Quiver-with-relations presentations and their TOML file format.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Word};

/// Order in which product strings are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Composition {
    /// `g*f` applies `f` first.
    #[default]
    Function,
    /// `f*g` applies `f` first.
    Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// A relation term: integer coefficient and a path in application order
/// (first arrow applied first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub path: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedRelation {
    pub source: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub composition: Composition,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<ParsedRelation>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    name: String,
    #[serde(default)]
    composition: Composition,
}

#[derive(Serialize, Deserialize)]
struct VertexDecl {
    name: String,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    #[serde(default)]
    relations: Vec<String>,
    algebra: Header,
    #[serde(default)]
    vertex: Vec<VertexDecl>,
    #[serde(default)]
    arrow: Vec<ArrowDecl>,
}

impl AlgebraPresentation {
    /// Builds and validates a presentation from declared pieces.
    pub fn new(
        name: impl Into<String>,
        composition: Composition,
        vertices: Vec<String>,
        arrows: Vec<ArrowDecl>,
        relations: &[&str],
    ) -> Result<Self, AlgebraError> {
        let mut pres = AlgebraPresentation {
            name: name.into(),
            composition,
            vertices,
            arrows,
            relations: Vec::new(),
        };
        pres.check_arrows()?;
        for r in relations {
            let parsed = pres.parse_relation(r)?;
            pres.relations.push(parsed);
        }
        Ok(pres)
    }

    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let file: PresentationFile =
            toml::from_str(text).map_err(|e| AlgebraError::Format(e.to_string()))?;
        let vertices = file.vertex.into_iter().map(|v| v.name).collect();
        let rels: Vec<&str> = file.relations.iter().map(String::as_str).collect();
        AlgebraPresentation::new(
            file.algebra.name,
            file.algebra.composition,
            vertices,
            file.arrow,
            &rels,
        )
    }

    pub fn to_toml(&self) -> String {
        let file = PresentationFile {
            relations: self.relations.iter().map(|r| r.source.clone()).collect(),
            algebra: Header {
                name: self.name.clone(),
                composition: self.composition,
            },
            vertex: self
                .vertices
                .iter()
                .map(|n| VertexDecl { name: n.clone() })
                .collect(),
            arrow: self.arrows.clone(),
        };
        toml::to_string(&file).expect("presentation serializes")
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_source(&self, a: usize) -> usize {
        self.vertex_index(&self.arrows[a].source).expect("validated")
    }

    pub fn arrow_target(&self, a: usize) -> usize {
        self.vertex_index(&self.arrows[a].target).expect("validated")
    }

    fn check_arrows(&self) -> Result<(), AlgebraError> {
        if self.vertices.is_empty() {
            return Err(AlgebraError::Format("no vertices declared".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(AlgebraError::Format(format!("duplicate vertex {v}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(AlgebraError::Format(format!("duplicate arrow {}", a.name)));
            }
            for end in [&a.source, &a.target] {
                if self.vertex_index(end).is_none() {
                    return Err(AlgebraError::UnknownVertex(end.clone()));
                }
            }
        }
        Ok(())
    }

    /// Parses one relation string, checking composability, admissibility
    /// and common endpoints.
    pub fn parse_relation(&self, text: &str) -> Result<ParsedRelation, AlgebraError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens: &tokens,
            pos: 0,
            pres: self,
        };
        let raw = parser.sum()?;
        if parser.pos != tokens.len() {
            return Err(AlgebraError::Parse(format!("trailing input in {text:?}")));
        }
        let mut terms: Vec<Term> = Vec::new();
        for (coeff, written) in raw {
            let path: Word = match self.composition {
                Composition::Function => written.into_iter().rev().collect(),
                Composition::Diagram => written,
            };
            self.check_composable(&path, text)?;
            if path.len() < 2 {
                return Err(AlgebraError::NotAdmissible(text.to_string()));
            }
            if let Some(t) = terms.iter_mut().find(|t| t.path == path) {
                t.coeff += coeff;
            } else {
                terms.push(Term { coeff, path });
            }
        }
        terms.retain(|t| t.coeff != 0);
        if terms.is_empty() {
            return Err(AlgebraError::Parse(format!("relation {text:?} is zero")));
        }
        let ends = |p: &Word| (self.arrow_source(p[0]), self.arrow_target(*p.last().unwrap()));
        let e0 = ends(&terms[0].path);
        if terms.iter().any(|t| ends(&t.path) != e0) {
            return Err(AlgebraError::InconsistentEndpoints(text.to_string()));
        }
        Ok(ParsedRelation {
            source: text.to_string(),
            terms,
        })
    }

    fn check_composable(&self, path: &[usize], text: &str) -> Result<(), AlgebraError> {
        for w in path.windows(2) {
            if self.arrow_target(w[0]) != self.arrow_source(w[1]) {
                return Err(AlgebraError::NotComposable {
                    relation: text.to_string(),
                    first: self.arrows[w[0]].name.clone(),
                    then: self.arrows[w[1]].name.clone(),
                });
            }
        }
        Ok(())
    }

    /// Renders a path (application order) as a product string under this
    /// presentation's composition convention.
    pub fn format_path(&self, path: &[usize]) -> String {
        let names: Vec<&str> = match self.composition {
            Composition::Function => path
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect(),
            Composition::Diagram => path.iter().map(|&a| self.arrows[a].name.as_str()).collect(),
        };
        names.join("*")
    }

    pub fn format_terms(&self, terms: &[Term]) -> String {
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            let (sign, mag) = if t.coeff < 0 { ("-", -t.coeff) } else { ("+", t.coeff) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&self.format_path(&t.path));
        }
        out
    }

    /// The presentation of the opposite algebra: arrows and relation paths reversed.
    pub fn opposite(&self) -> AlgebraPresentation {
        let arrows: Vec<ArrowDecl> = self
            .arrows
            .iter()
            .map(|a| ArrowDecl {
                name: a.name.clone(),
                source: a.target.clone(),
                target: a.source.clone(),
            })
            .collect();
        let mut op = AlgebraPresentation {
            name: format!("{}^op", self.name),
            composition: self.composition,
            vertices: self.vertices.clone(),
            arrows,
            relations: Vec::new(),
        };
        for r in &self.relations {
            let terms: Vec<Term> = r
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff,
                    path: t.path.iter().rev().copied().collect(),
                })
                .collect();
            let source = op.format_terms(&terms);
            op.relations.push(ParsedRelation { source, terms });
        }
        op
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, AlgebraError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().map_err(|_| {
                    AlgebraError::Parse(format!("bad integer {s}"))
                })?));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(AlgebraError::Parse(format!(
                    "unexpected character {other:?} in {text:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    pres: &'a AlgebraPresentation,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    /// Products are returned in written order.
    fn sum(&mut self) -> Result<Vec<(i64, Vec<usize>)>, AlgebraError> {
        let mut out = Vec::new();
        let mut sign = 1;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let (c, path) = self.term()?;
            out.push((sign * c, path));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<(i64, Vec<usize>), AlgebraError> {
        let mut coeff = 1;
        if let Some(Tok::Int(n)) = self.peek() {
            coeff = *n;
            self.pos += 1;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            }
        }
        let mut path = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            path.extend(self.factor()?);
        }
        Ok((coeff, path))
    }

    fn factor(&mut self) -> Result<Vec<usize>, AlgebraError> {
        let base = match self.next() {
            Some(Tok::Ident(name)) => {
                let a = self
                    .pres
                    .arrow_index(&name)
                    .ok_or(AlgebraError::UnknownArrow(name))?;
                vec![a]
            }
            Some(Tok::LParen) => {
                let mut path = self.factor()?;
                while self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    path.extend(self.factor()?);
                }
                if self.next() != Some(Tok::RParen) {
                    return Err(AlgebraError::Parse("missing ')'".into()));
                }
                path
            }
            other => {
                return Err(AlgebraError::Parse(format!(
                    "expected arrow or '(' but found {other:?}"
                )))
            }
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(n)) if n >= 1 => {
                    let mut out = Vec::with_capacity(base.len() * n as usize);
                    for _ in 0..n {
                        out.extend_from_slice(&base);
                    }
                    return Ok(out);
                }
                other => {
                    return Err(AlgebraError::Parse(format!(
                        "expected positive exponent, found {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(n: &str, s: &str, t: &str) -> ArrowDecl {
        ArrowDecl {
            name: n.into(),
            source: s.into(),
            target: t.into(),
        }
    }

    fn three_r() -> AlgebraPresentation {
        AlgebraPresentation::new(
            "D3R",
            Composition::Function,
            vec!["0".into(), "1".into(), "2".into()],
            vec![
                arrow("alpha", "0", "0"),
                arrow("beta", "0", "1"),
                arrow("delta", "1", "2"),
                arrow("lambda", "2", "0"),
                arrow("rho", "1", "1"),
                arrow("xi", "2", "2"),
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn function_order_is_right_to_left() {
        let p = three_r();
        let r = p.parse_relation("beta*alpha").unwrap();
        // alpha first, then beta
        assert_eq!(r.terms[0].path, vec![0, 1]);
    }

    #[test]
    fn diagram_order_rejects_function_order_relations() {
        let mut p = three_r();
        p.composition = Composition::Diagram;
        assert!(matches!(
            p.parse_relation("alpha*lambda"),
            Err(AlgebraError::NotComposable { .. })
        ));
    }

    #[test]
    fn powers_and_groups() {
        let p = three_r();
        let r = p.parse_relation("alpha^2 - (lambda*delta*beta)^1").unwrap();
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[0].path, vec![0, 0]);
        assert_eq!(r.terms[1].coeff, -1);
        assert_eq!(r.terms[1].path, vec![1, 2, 3]);
    }

    #[test]
    fn error_cases() {
        let p = three_r();
        assert!(matches!(
            p.parse_relation("gamma*alpha"),
            Err(AlgebraError::UnknownArrow(_))
        ));
        assert!(matches!(
            p.parse_relation("alpha"),
            Err(AlgebraError::NotAdmissible(_))
        ));
        assert!(matches!(
            p.parse_relation("beta*alpha - delta*beta"),
            Err(AlgebraError::InconsistentEndpoints(_))
        ));
        assert!(matches!(
            p.parse_relation("alpha*beta"),
            Err(AlgebraError::NotComposable { .. })
        ));
    }

    #[test]
    fn trivial_presentation() {
        let text = "[algebra]\nname = \"k\"\n\n[[vertex]]\nname = \"0\"\n";
        let p = AlgebraPresentation::parse(text).unwrap();
        assert_eq!(p.vertices.len(), 1);
        assert!(p.arrows.is_empty());
        assert!(p.relations.is_empty());
    }

    #[test]
    fn toml_round_trip() {
        let mut p = three_r();
        for r in ["alpha*lambda", "alpha^2 - lambda*delta*beta", "2*rho^2 + beta*lambda*delta"] {
            let rel = p.parse_relation(r).unwrap();
            p.relations.push(rel);
        }
        let text = p.to_toml();
        let q = AlgebraPresentation::parse(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_toml(), text);
    }
}
