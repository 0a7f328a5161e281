//! Recursive-descent parser for `.ncs` sources.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::algebra::AlgebraPresentation;
use super::lexer::{tokenize, Tok, Token};
use super::polynomial::NcPolynomial;
use crate::error::{Error, Pos, Result};
use crate::exactfield::{Arith, ExactMatrix, Field, FieldSpec, Scalar};

const KEYWORDS: &[&str] = &[
    "field", "bind", "root_of", "algebra", "gens", "central", "rel", "zelt", "module", "dim",
];

/// A module as written in the source, before validation against the
/// relations.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleCandidate {
    pub name: String,
    pub dim: usize,
    pub matrices: BTreeMap<String, ExactMatrix>,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
pub struct SourceFile {
    pub algebra: Arc<AlgebraPresentation>,
    pub modules: Vec<ModuleCandidate>,
}

impl SourceFile {
    pub fn module(&self, name: &str) -> Option<&ModuleCandidate> {
        self.modules.iter().find(|m| m.name == name)
    }
}

/// Parses a source file without checking modules against the relations.
pub fn parse_source(text: &str) -> Result<SourceFile> {
    let mut p = Parser::new(text)?;
    let field = p.field_decl()?;
    let algebra = Arc::new(p.algebra_decl(&field)?);
    let mut modules: Vec<ModuleCandidate> = Vec::new();
    while !p.at_eof() {
        let m = p.module_decl(&algebra)?;
        if modules.iter().any(|o| o.name == m.name) {
            return Err(Error::Syntax { pos: m.pos, msg: format!("module `{}` declared twice", m.name) });
        }
        modules.push(m);
    }
    Ok(SourceFile { algebra, modules })
}

/// Parses a field description such as `Q`, `Fp 7`, `Qext x^2-2` or
/// `Fpext 7 x^2+1 bind i root_of x^2+1`.
pub fn parse_field(text: &str) -> Result<Field> {
    let mut p = Parser::new(text)?;
    let f = p.field_body()?;
    p.eat_sym(';');
    p.expect_eof()?;
    Ok(f)
}

/// Parses a scalar expression over `field`. Besides bound constants and
/// `theta`, the names in `theta_aliases` also denote θ.
pub fn parse_scalar(field: &Field, text: &str, theta_aliases: &[&str]) -> Result<Scalar> {
    let mut p = Parser::new(text)?;
    p.theta_aliases = theta_aliases.iter().map(|s| s.to_string()).collect();
    let s = p.scalar(field)?;
    p.expect_eof()?;
    Ok(s)
}

/// Parses a polynomial in the given noncommuting variables.
pub fn parse_polynomial(field: &Field, vars: &[String], text: &str) -> Result<NcPolynomial> {
    let mut p = Parser::new(text)?;
    let poly = p.expr(&Scope::Gens { field, gens: vars })?;
    p.expect_eof()?;
    Ok(poly)
}

enum Scope<'a> {
    /// Univariate integer polynomial in a free variable named on first use.
    IntPoly,
    /// Generators and field constants.
    Gens { field: &'a Field, gens: &'a [String] },
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    theta_aliases: Vec<String>,
    int_var: Option<String>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: tokenize(text)?, i: 0, theta_aliases: Vec::new(), int_var: None })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.err(format!("expected end of input, found {}", self.describe()))
        }
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> Result<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{kw}`, found {}", self.describe()))
        }
    }

    fn name(&mut self) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok((s, pos))
            }
            _ => self.err(format!("expected a name, found {}", self.describe())),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.err(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn small_integer(&mut self) -> Result<u64> {
        let pos = self.pos();
        let n = self.integer()?;
        n.to_u64().ok_or(Error::Syntax { pos, msg: format!("integer {n} is too large") })
    }

    fn field_decl(&mut self) -> Result<Field> {
        if self.at_eof() {
            return self.err("empty source");
        }
        self.expect_kw("field")?;
        let f = self.field_body()?;
        self.expect_sym(';')?;
        Ok(f)
    }

    fn field_body(&mut self) -> Result<Field> {
        let pos = self.pos();
        let (kind, _) = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                (s, pos)
            }
            _ => return self.err(format!("expected a field kind, found {}", self.describe())),
        };
        let at = |e: Error| match e {
            Error::InvalidField(msg) => Error::InvalidField(format!("{msg} (at {pos})")),
            e => e,
        };
        let mut field = match kind.as_str() {
            "Q" => FieldSpec::rationals(),
            "Fp" => FieldSpec::prime(self.small_integer()?).map_err(at)?,
            "Qext" => FieldSpec::number_field(self.int_poly()?).map_err(at)?,
            "Fpext" => {
                let p = self.small_integer()?;
                FieldSpec::finite_extension(p, self.int_poly()?).map_err(at)?
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unknown field kind `{other}` (expected Q, Fp, Qext or Fpext)"),
                })
            }
        };
        while self.is_kw("bind") {
            self.bump();
            let (name, _) = self.name()?;
            if name == "theta" {
                return self.err("`theta` is reserved");
            }
            self.expect_kw("root_of")?;
            let poly = self.int_poly()?;
            field = field.with_binding(&name, poly)?;
        }
        Ok(field)
    }

    /// An integer univariate polynomial, constant term first in the result.
    fn int_poly(&mut self) -> Result<Vec<BigInt>> {
        let pos = self.pos();
        self.int_var = None;
        let p = self.expr(&Scope::IntPoly)?;
        let deg = p.degree().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (w, c) in p.terms() {
            let c = &c.rational_coords().expect("rational")[0];
            if !c.is_integer() {
                return Err(Error::Syntax { pos, msg: "polynomial coefficients must be integers".into() });
            }
            coeffs[w.len()] = c.numer().clone();
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Ok(coeffs)
    }

    fn algebra_decl(&mut self, field: &Field) -> Result<AlgebraPresentation> {
        self.expect_kw("algebra")?;
        let (name, _) = self.name()?;
        self.expect_sym('{')?;
        self.expect_kw("gens")?;
        let gens = self.name_list()?;
        for (g, pos) in &gens {
            if g == "theta" || field.constant(g).is_some() {
                return Err(Error::Syntax { pos: *pos, msg: format!("generator `{g}` shadows a field constant") });
            }
        }
        let gens: Vec<String> = gens.into_iter().map(|(g, _)| g).collect();
        let mut central = Vec::new();
        if self.is_kw("central") {
            self.bump();
            for (c, pos) in self.name_list()? {
                if !gens.contains(&c) {
                    return Err(Error::UnknownGenerator(format!("{c} (at {pos})")));
                }
                central.push(c);
            }
        }
        let scope = Scope::Gens { field, gens: &gens };
        let mut relations = Vec::new();
        let mut zelts: Vec<(String, NcPolynomial)> = Vec::new();
        loop {
            if self.is_kw("rel") {
                self.bump();
                relations.push(self.expr(&scope)?);
                self.expect_sym(';')?;
            } else if self.is_kw("zelt") {
                self.bump();
                let (n, pos) = self.name()?;
                if zelts.iter().any(|(m, _)| *m == n) || gens.contains(&n) {
                    return Err(Error::Syntax { pos, msg: format!("name `{n}` already in use") });
                }
                self.expect_sym('=')?;
                zelts.push((n, self.expr(&scope)?));
                self.expect_sym(';')?;
            } else {
                break;
            }
        }
        self.expect_sym('}')?;
        AlgebraPresentation::new(&name, field, gens, central, relations, zelts)
    }

    fn name_list(&mut self) -> Result<Vec<(String, Pos)>> {
        let mut out = vec![self.name()?];
        while self.eat_sym(',') {
            out.push(self.name()?);
        }
        self.expect_sym(';')?;
        for (i, (n, pos)) in out.iter().enumerate() {
            if out[..i].iter().any(|(m, _)| m == n) {
                return Err(Error::Syntax { pos: *pos, msg: format!("`{n}` listed twice") });
            }
        }
        Ok(out)
    }

    fn module_decl(&mut self, alg: &AlgebraPresentation) -> Result<ModuleCandidate> {
        let pos = self.pos();
        self.expect_kw("module")?;
        let (name, _) = self.name()?;
        self.expect_kw("dim")?;
        let dim_pos = self.pos();
        let dim = self.small_integer()? as usize;
        if dim == 0 {
            return Err(Error::Shape(format!("module `{name}` has dimension 0 (at {dim_pos})")));
        }
        self.expect_sym('{')?;
        let mut matrices = BTreeMap::new();
        loop {
            let (g, gpos) = self.name()?;
            if alg.index_of(&g).is_none() {
                return Err(Error::UnknownGenerator(g));
            }
            if matrices.contains_key(&g) {
                return Err(Error::Syntax { pos: gpos, msg: format!("matrix for `{g}` given twice") });
            }
            self.expect_sym('=')?;
            let m = self.matrix(&alg.field)?;
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!(
                    "matrix for `{g}` in module `{name}` is {}x{}, expected {dim}x{dim} (at {gpos})",
                    m.rows(),
                    m.cols()
                )));
            }
            matrices.insert(g, m);
            self.expect_sym(';')?;
            if self.eat_sym('}') {
                break;
            }
        }
        Ok(ModuleCandidate { name, dim, matrices, pos })
    }

    fn matrix(&mut self, field: &Field) -> Result<ExactMatrix> {
        let pos = self.pos();
        self.expect_sym('[')?;
        let mut rows = vec![self.row(field)?];
        while self.eat_sym(',') {
            rows.push(self.row(field)?);
        }
        self.expect_sym(']')?;
        ExactMatrix::from_rows(field, rows).map_err(|e| match e {
            Error::Shape(msg) => Error::Shape(format!("{msg} (at {pos})")),
            e => e,
        })
    }

    fn row(&mut self, field: &Field) -> Result<Vec<Scalar>> {
        self.expect_sym('[')?;
        let mut out = vec![self.scalar(field)?];
        while self.eat_sym(',') {
            out.push(self.scalar(field)?);
        }
        self.expect_sym(']')?;
        Ok(out)
    }

    fn scalar(&mut self, field: &Field) -> Result<Scalar> {
        let pos = self.pos();
        let p = self.expr(&Scope::Gens { field, gens: &[] })?;
        p.as_constant(field)
            .ok_or(Error::Syntax { pos, msg: "expected a scalar expression".into() })
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self, scope: &Scope) -> Result<NcPolynomial> {
        let f = self.scope_field(scope);
        let mut acc = self.term(scope)?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&f, &self.term(scope)?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&f, &self.term(scope)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn scope_field(&self, scope: &Scope) -> Field {
        match scope {
            Scope::IntPoly => FieldSpec::rationals(),
            Scope::Gens { field, .. } => (*field).clone(),
        }
    }

    // term := ('-' | '+')* power (('*' | '/') power)*
    fn term(&mut self, scope: &Scope) -> Result<NcPolynomial> {
        let f = self.scope_field(scope);
        let mut negate = false;
        loop {
            if self.eat_sym('-') {
                negate = !negate;
            } else if !self.eat_sym('+') {
                break;
            }
        }
        let mut acc = self.power(scope)?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&f, &self.power(scope)?);
            } else if self.is_sym('/') {
                let pos = self.pos();
                self.bump();
                let d = self.power(scope)?;
                let c = d
                    .as_constant(&f)
                    .ok_or(Error::Syntax { pos, msg: "can only divide by a scalar".into() })?;
                let inv = f.inv(&c).ok_or(Error::Syntax { pos, msg: "division by zero".into() })?;
                acc = acc.scale(&f, &inv);
            } else {
                break;
            }
        }
        Ok(if negate { acc.neg(&f) } else { acc })
    }

    // power := atom ('^' INT)?
    fn power(&mut self, scope: &Scope) -> Result<NcPolynomial> {
        let f = self.scope_field(scope);
        let base = self.atom(scope)?;
        if self.eat_sym('^') {
            let pos = self.pos();
            let e = self.small_integer()?;
            if e > 1000 {
                return Err(Error::Syntax { pos, msg: "exponent too large".into() });
            }
            return Ok(base.pow(&f, e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self, scope: &Scope) -> Result<NcPolynomial> {
        let f = self.scope_field(scope);
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(NcPolynomial::constant(&f, f.from_bigint(&n)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr(scope)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                self.resolve(scope, &name, pos)
            }
            _ => self.err(format!("expected an expression, found {}", self.describe())),
        }
    }

    fn resolve(&mut self, scope: &Scope, name: &str, pos: Pos) -> Result<NcPolynomial> {
        match scope {
            Scope::IntPoly => {
                let q = FieldSpec::rationals();
                match &self.int_var {
                    None => self.int_var = Some(name.to_string()),
                    Some(v) if v != name => {
                        return Err(Error::Syntax {
                            pos,
                            msg: format!("polynomial mixes variables `{v}` and `{name}`"),
                        })
                    }
                    Some(_) => {}
                }
                Ok(NcPolynomial::generator(&q, 0))
            }
            Scope::Gens { field, gens } => {
                if let Some(i) = gens.iter().position(|g| g == name) {
                    return Ok(NcPolynomial::generator(field, i));
                }
                if let Some(c) = field.constant(name) {
                    return Ok(NcPolynomial::constant(field, c.clone()));
                }
                let is_theta = name == "theta" || self.theta_aliases.iter().any(|a| a == name);
                if is_theta && field.degree() > 1 {
                    return Ok(NcPolynomial::constant(field, field.theta()));
                }
                if gens.is_empty() {
                    Err(Error::Syntax { pos, msg: format!("unknown constant `{name}`") })
                } else {
                    Err(Error::UnknownGenerator(name.to_string()))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MU3: &str = "
        field Qext x^2+x+1 bind zeta3 root_of x^2+x+1;
        algebra A {
          gens x, y, s;
          rel s*x - zeta3*x*s;
          rel s*y - zeta3^2*y*s;
          rel s^3 - 1;
          rel x*y - y*x;
        }
    ";

    #[test]
    fn mu3_source() {
        let src = parse_source(MU3).unwrap();
        assert_eq!(src.algebra.generators, vec!["x", "y", "s"]);
        assert_eq!(src.algebra.relations.len(), 4);
        assert!(src.modules.is_empty());
    }

    #[test]
    fn minimal_source() {
        let src = parse_source("field Fp 7; algebra A { gens x; rel x^2 - 3; }").unwrap();
        assert_eq!(src.algebra.generators.len(), 1);
        assert_eq!(src.algebra.relations.len(), 1);
    }

    #[test]
    fn zeta3_over_f7_and_f5() {
        let f = parse_field("Fp 7 bind zeta3 root_of x^2+x+1").unwrap();
        let z = f.constant("zeta3").unwrap();
        let v = z.modular_coords().unwrap()[0];
        assert!(v == 2 || v == 4);
        assert!(matches!(
            parse_field("Fp 5 bind zeta3 root_of x^2+x+1"),
            Err(Error::ConstantUnresolvable(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_source("field Q;\nalgebra A {\n  gens x;\n  rel x^ ;\n}") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, Pos { line: 4, col: 10 }),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_source(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_source("field Q; algebra A { gens x; rel x*y; }"),
            Err(Error::UnknownGenerator(g)) if g == "y"
        ));
    }

    #[test]
    fn module_shapes() {
        let base = "field Q; algebra A { gens x; rel x^2 - 2; }";
        let ok = parse_source(&format!("{base} module M dim 2 {{ x = [[0, 2], [1, 0]]; }}")).unwrap();
        assert_eq!(ok.modules[0].dim, 2);
        assert!(matches!(
            parse_source(&format!("{base} module M dim 2 {{ x = [[0, 2]]; }}")),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            parse_source(&format!("{base} module M dim 2 {{ x = [[0, 2], [1]]; }}")),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            parse_source(&format!("{base} module M dim 0 {{ x = [[0]]; }}")),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            parse_source(&format!("{base} module M dim 1 {{ z = [[0]]; }}")),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn scalars_with_division_and_aliases() {
        let k = parse_field("Qext x^2-2").unwrap();
        let a = parse_scalar(&k, "(theta + 1)/2", &[]).unwrap();
        assert_eq!(k.format(&a), "1/2*theta + 1/2");
        let t = parse_scalar(&k, "t", &["t"]).unwrap();
        assert_eq!(k.mul(&t, &t), k.from_i64(2));
        assert!(parse_scalar(&k, "t", &[]).is_err());
        assert!(parse_scalar(&k, "1/0", &[]).is_err());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let q = FieldSpec::rationals();
        let p = parse_polynomial(&q, &["x".to_string()], "-x^2").unwrap();
        let x = NcPolynomial::generator(&q, 0);
        assert_eq!(p, x.pow(&q, 2).neg(&q));
    }
}
