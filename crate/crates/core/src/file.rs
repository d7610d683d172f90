//! The algebra-definition file format and character files.
//!
//! Algebra files are TOML documents with an `[algebra]` table (`n`, `m`,
//! integer matrix rows `S`, `skew_constants`), an optional `[weights]` table
//! (`W` rows), repeated `[[relation]]` blocks (`i`, `j`, and an expression
//! string `r`), and optional `[[stratum]]` blocks (`vanish`/`invert`
//! expression lists). Expressions are parsed by a small recursive-descent
//! parser over the grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' sint)?
//! atom   := INT | 'q' | 'e' | 'x'INT | '(' expr ')'
//! ```
//!
//! Relation expressions must be written with generator factors in ascending
//! index order (the PBW normal form) and integer Laurent coefficients in
//! `q`; stratum expressions are evaluated inside the instantiated algebra
//! and may use any factor order. Character files use `e` (the root `ε`) in
//! place of `q` and allow `/` for rational scalars.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::intlat::IntMat;
use crate::orealg::{IntLaurent, OreAlgebra, OreElement, OreSpecData, RelationData};
use crate::qrep::CentralCharacter;
use crate::scalar::{CycScalar, QLaurent};
use crate::strat::StratumDecl;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("TOML parse error: {0}")]
    Toml(String),
    #[error("missing or malformed field: {0}")]
    Field(String),
    #[error("expression syntax error: {0}")]
    Syntax(String),
    #[error("expression error: {0}")]
    Semantics(String),
}

/// A parsed algebra file: the raw spec plus any stratum declarations, kept
/// as expression strings so serialization round-trips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub spec: OreSpecData,
    pub strata: Vec<RawStratum>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawStratum {
    pub label: Option<String>,
    pub vanish: Vec<String>,
    pub invert: Vec<String>,
}

// ---------------------------------------------------------------------------
// Expression AST
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Ast {
    Num(i64),
    Q,
    Eps,
    Gen(usize),
    Pow(Box<Ast>, i64),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Q,
    Eps,
    Gen(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>, FileError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|x| x.checked_add((chars[i] as u8 - b'0') as i64))
                        .ok_or_else(|| FileError::Syntax("integer overflow".into()))?;
                    i += 1;
                }
                out.push(Tok::Int(v));
            }
            'q' => {
                out.push(Tok::Q);
                i += 1;
            }
            'e' => {
                out.push(Tok::Eps);
                i += 1;
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(FileError::Syntax("generator needs an index, like x2".into()));
                }
                let idx: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| FileError::Syntax("bad generator index".into()))?;
                if idx == 0 {
                    return Err(FileError::Syntax("generator indices are 1-based".into()));
                }
                out.push(Tok::Gen(idx - 1));
            }
            other => {
                return Err(FileError::Syntax(format!("unexpected character '{}'", other)));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast, FileError> {
        let mut lhs = if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, FileError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    let rhs = self.factor()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.factor()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs));
                }
                // Implicit multiplication is not supported; adjacency of
                // atoms without '*' is a syntax error caught by the caller.
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, FileError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let sign = if matches!(self.peek(), Some(Tok::Minus)) {
                self.next();
                -1
            } else {
                1
            };
            match self.next() {
                Some(Tok::Int(k)) => Ok(Ast::Pow(Box::new(base), sign * k)),
                _ => Err(FileError::Syntax("expected integer exponent after '^'".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, FileError> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(Ast::Num(v)),
            Some(Tok::Q) => Ok(Ast::Q),
            Some(Tok::Eps) => Ok(Ast::Eps),
            Some(Tok::Gen(i)) => Ok(Ast::Gen(i)),
            Some(Tok::Minus) => Ok(Ast::Neg(Box::new(self.atom()?))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(FileError::Syntax("missing ')'".into())),
                }
            }
            other => Err(FileError::Syntax(format!("unexpected token {:?}", other))),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast, FileError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(FileError::Syntax(format!(
            "trailing input after expression in '{}'",
            src
        )));
    }
    Ok(ast)
}

// ---------------------------------------------------------------------------
// Lowering: relation polynomials (l-independent, PBW-ordered)
// ---------------------------------------------------------------------------

/// Sum of PBW-ordered monomials with integer Laurent coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
enum RelValue {
    Scalar(IntLaurent),
    Poly(Vec<(Vec<i64>, IntLaurent)>),
}

fn il_mul(a: &IntLaurent, b: &IntLaurent) -> IntLaurent {
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for (ka, ca) in &a.0 {
        for (kb, cb) in &b.0 {
            let e = out.entry(ka + kb).or_insert(0);
            *e += ca * cb;
            if *e == 0 {
                out.remove(&(ka + kb));
            }
        }
    }
    IntLaurent(out)
}

fn il_add(a: &IntLaurent, b: &IntLaurent) -> IntLaurent {
    let mut out = a.0.clone();
    for (k, c) in &b.0 {
        let e = out.entry(*k).or_insert(0);
        *e += c;
        if *e == 0 {
            out.remove(k);
        }
    }
    IntLaurent(out)
}

fn il_neg(a: &IntLaurent) -> IntLaurent {
    IntLaurent(a.0.iter().map(|(k, c)| (*k, -c)).collect())
}

impl RelValue {
    fn poly_terms(self, total: usize) -> Vec<(Vec<i64>, IntLaurent)> {
        match self {
            RelValue::Scalar(c) => {
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(vec![0; total], c)]
                }
            }
            RelValue::Poly(t) => t,
        }
    }
}

fn rel_mul(a: RelValue, b: RelValue, n: usize) -> Result<RelValue, FileError> {
    match (a, b) {
        (RelValue::Scalar(x), RelValue::Scalar(y)) => Ok(RelValue::Scalar(il_mul(&x, &y))),
        (RelValue::Scalar(x), RelValue::Poly(t)) | (RelValue::Poly(t), RelValue::Scalar(x)) => {
            Ok(RelValue::Poly(
                t.into_iter()
                    .map(|(e, c)| (e, il_mul(&c, &x)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            ))
        }
        (RelValue::Poly(ta), RelValue::Poly(tb)) => {
            let mut out: BTreeMap<Vec<i64>, IntLaurent> = BTreeMap::new();
            for (ea, ca) in &ta {
                let max_a = ea.iter().rposition(|&e| e != 0);
                for (eb, cb) in &tb {
                    let min_b = eb.iter().position(|&e| e != 0);
                    if let (Some(ma), Some(mb)) = (max_a, min_b) {
                        if ma > mb {
                            return Err(FileError::Semantics(
                                "relation expressions must list generators in ascending index order"
                                    .into(),
                            ));
                        }
                    }
                    let expo: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    if expo[..n].iter().any(|&e| e < 0) {
                        return Err(FileError::Semantics(
                            "negative power of a polynomial generator".into(),
                        ));
                    }
                    let c = il_mul(ca, cb);
                    let entry = out.entry(expo).or_default();
                    *entry = il_add(entry, &c);
                }
            }
            Ok(RelValue::Poly(
                out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            ))
        }
    }
}

fn rel_add(a: RelValue, b: RelValue, total: usize, negate: bool) -> RelValue {
    let ta = a.poly_terms(total);
    let tb = b.poly_terms(total);
    let mut out: BTreeMap<Vec<i64>, IntLaurent> = BTreeMap::new();
    for (e, c) in ta {
        let entry = out.entry(e).or_default();
        *entry = il_add(entry, &c);
    }
    for (e, c) in tb {
        let c = if negate { il_neg(&c) } else { c };
        let entry = out.entry(e).or_default();
        *entry = il_add(entry, &c);
    }
    RelValue::Poly(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn lower_relation(ast: &Ast, total: usize, n: usize) -> Result<RelValue, FileError> {
    match ast {
        Ast::Num(v) => Ok(RelValue::Scalar(IntLaurent::constant(*v))),
        Ast::Q => Ok(RelValue::Scalar(IntLaurent::q_pow(1))),
        Ast::Eps => Err(FileError::Semantics(
            "the root 'e' cannot appear in relation data".into(),
        )),
        Ast::Gen(i) => {
            if *i >= total {
                return Err(FileError::Semantics(format!(
                    "generator x{} out of range (total {})",
                    i + 1,
                    total
                )));
            }
            let mut e = vec![0i64; total];
            e[*i] = 1;
            Ok(RelValue::Poly(vec![(e, IntLaurent::constant(1))]))
        }
        Ast::Neg(a) => {
            let v = lower_relation(a, total, n)?;
            Ok(match v {
                RelValue::Scalar(c) => RelValue::Scalar(il_neg(&c)),
                RelValue::Poly(t) => {
                    RelValue::Poly(t.into_iter().map(|(e, c)| (e, il_neg(&c))).collect())
                }
            })
        }
        Ast::Add(a, b) => Ok(rel_add(
            lower_relation(a, total, n)?,
            lower_relation(b, total, n)?,
            total,
            false,
        )),
        Ast::Sub(a, b) => Ok(rel_add(
            lower_relation(a, total, n)?,
            lower_relation(b, total, n)?,
            total,
            true,
        )),
        Ast::Mul(a, b) => rel_mul(
            lower_relation(a, total, n)?,
            lower_relation(b, total, n)?,
            n,
        ),
        Ast::Div(_, _) => Err(FileError::Semantics(
            "division is not allowed in relation data".into(),
        )),
        Ast::Pow(a, k) => {
            let base = lower_relation(a, total, n)?;
            match (&base, *k) {
                (RelValue::Scalar(c), k) => {
                    if let Some((&p, &1)) = c.0.iter().next().filter(|_| c.0.len() == 1) {
                        Ok(RelValue::Scalar(IntLaurent::q_pow(p * k)))
                    } else if k >= 0 {
                        let mut acc = IntLaurent::constant(1);
                        for _ in 0..k {
                            acc = il_mul(&acc, c);
                        }
                        Ok(RelValue::Scalar(acc))
                    } else {
                        Err(FileError::Semantics(
                            "negative power of a non-monomial coefficient".into(),
                        ))
                    }
                }
                (RelValue::Poly(t), k) if t.len() == 1 => {
                    let (e, c) = &t[0];
                    if *c != IntLaurent::constant(1) && k < 0 {
                        return Err(FileError::Semantics(
                            "negative power of a non-unit monomial".into(),
                        ));
                    }
                    let expo: Vec<i64> = e.iter().map(|x| x * k).collect();
                    if expo[..n].iter().any(|&x| x < 0) {
                        return Err(FileError::Semantics(
                            "negative power of a polynomial generator".into(),
                        ));
                    }
                    let mut coeff = IntLaurent::constant(1);
                    if k >= 0 {
                        for _ in 0..k {
                            coeff = il_mul(&coeff, c);
                        }
                    }
                    Ok(RelValue::Poly(vec![(expo, coeff)]))
                }
                (RelValue::Poly(_), k) if k >= 0 => {
                    let mut acc = RelValue::Scalar(IntLaurent::constant(1));
                    for _ in 0..k {
                        acc = rel_mul(acc, base.clone(), n)?;
                    }
                    Ok(acc)
                }
                _ => Err(FileError::Semantics(
                    "negative power of a sum is not supported".into(),
                )),
            }
        }
    }
}

/// Parse a relation expression into PBW-ordered terms with integer Laurent
/// coefficients.
pub fn relation_terms_from_str(
    src: &str,
    total: usize,
    n: usize,
) -> Result<Vec<(Vec<i64>, IntLaurent)>, FileError> {
    let ast = parse_ast(src)?;
    Ok(lower_relation(&ast, total, n)?.poly_terms(total))
}

// ---------------------------------------------------------------------------
// Lowering: elements of an instantiated algebra
// ---------------------------------------------------------------------------

/// Evaluate an expression inside the algebra (any factor order; the
/// multiplication engine normal-orders it).
pub fn element_from_str(alg: &Arc<OreAlgebra>, src: &str) -> Result<OreElement, FileError> {
    let ast = parse_ast(src)?;
    lower_element(alg, &ast)
}

fn lower_element(alg: &Arc<OreAlgebra>, ast: &Ast) -> Result<OreElement, FileError> {
    let l = alg.root_order();
    match ast {
        Ast::Num(v) => Ok(OreElement::constant(alg, QLaurent::from_i64(l, *v))),
        Ast::Q => Ok(OreElement::constant(alg, QLaurent::q(l))),
        Ast::Eps => Ok(OreElement::constant(
            alg,
            QLaurent::constant(CycScalar::eps(l)),
        )),
        Ast::Gen(i) => {
            if *i >= alg.total_generators() {
                return Err(FileError::Semantics(format!(
                    "generator x{} out of range",
                    i + 1
                )));
            }
            Ok(OreElement::generator(alg, *i))
        }
        Ast::Neg(a) => Ok(lower_element(alg, a)?.neg()),
        Ast::Add(a, b) => Ok(lower_element(alg, a)?.add(&lower_element(alg, b)?)),
        Ast::Sub(a, b) => Ok(lower_element(alg, a)?.sub(&lower_element(alg, b)?)),
        Ast::Mul(a, b) => Ok(lower_element(alg, a)?.mul(&lower_element(alg, b)?)),
        Ast::Div(_, _) => Err(FileError::Semantics(
            "division is not allowed in algebra elements".into(),
        )),
        Ast::Pow(a, k) => {
            let base = lower_element(alg, a)?;
            if *k >= 0 {
                Ok(base.pow(*k as u32))
            } else {
                // Negative powers only for single invertible-generator или q
                // monomials.
                if let Some((expo, coeff)) = single_term(&base) {
                    let n = alg.skew_count();
                    if expo[..n].iter().all(|&e| e == 0) {
                        if let Some((qk, c)) = coeff.as_monomial() {
                            if c.is_one() {
                                let inv_expo: Vec<i64> = expo.iter().map(|x| x * k).collect();
                                return Ok(OreElement::monomial(
                                    alg,
                                    inv_expo,
                                    QLaurent::q_pow(l, qk * k),
                                ));
                            }
                        }
                    }
                }
                Err(FileError::Semantics(
                    "negative powers are supported only on invertible generator monomials".into(),
                ))
            }
        }
    }
}

fn single_term(e: &OreElement) -> Option<(Vec<i64>, QLaurent)> {
    if e.terms().len() == 1 {
        let (t, c) = e.terms().iter().next().unwrap();
        Some((t.clone(), c.clone()))
    } else {
        None
    }
}

/// Evaluate a character-value expression (over `e`) into `Q(ε)`.
pub fn scalar_from_str(src: &str, l: u32) -> Result<CycScalar, FileError> {
    let ast = parse_ast(src)?;
    lower_scalar(&ast, l)
}

fn lower_scalar(ast: &Ast, l: u32) -> Result<CycScalar, FileError> {
    match ast {
        Ast::Num(v) => Ok(CycScalar::from_i64(l, *v)),
        Ast::Eps => Ok(CycScalar::eps(l)),
        Ast::Q => Err(FileError::Semantics(
            "'q' cannot appear in a character value; use 'e' for the root".into(),
        )),
        Ast::Gen(i) => Err(FileError::Semantics(format!(
            "generator x{} cannot appear in a character value",
            i + 1
        ))),
        Ast::Neg(a) => Ok(lower_scalar(a, l)?.neg()),
        Ast::Add(a, b) => Ok(lower_scalar(a, l)?.add(&lower_scalar(b, l)?)),
        Ast::Sub(a, b) => Ok(lower_scalar(a, l)?.sub(&lower_scalar(b, l)?)),
        Ast::Mul(a, b) => Ok(lower_scalar(a, l)?.mul(&lower_scalar(b, l)?)),
        Ast::Div(a, b) => {
            let d = lower_scalar(b, l)?;
            if d.is_zero() {
                return Err(FileError::Semantics("division by zero".into()));
            }
            Ok(lower_scalar(a, l)?.div(&d))
        }
        Ast::Pow(a, k) => {
            let base = lower_scalar(a, l)?;
            if base.is_zero() && *k < 0 {
                return Err(FileError::Semantics("division by zero".into()));
            }
            Ok(base.pow(*k))
        }
    }
}

// ---------------------------------------------------------------------------
// TOML container
// ---------------------------------------------------------------------------

pub fn parse_algebra_file(src: &str) -> Result<AlgebraFile, FileError> {
    let doc: toml::Table = src
        .parse()
        .map_err(|e: toml::de::Error| FileError::Toml(e.to_string()))?;
    let algebra = doc
        .get("algebra")
        .and_then(|v| v.as_table())
        .ok_or_else(|| FileError::Field("[algebra] table".into()))?;
    let n = get_usize(algebra, "n")?;
    let m = get_usize(algebra, "m")?;
    let total = n + m;
    let s = get_matrix(algebra, "S")?;
    let skew_constants: Vec<i64> = match algebra.get("skew_constants") {
        Some(v) => int_array(v, "skew_constants")?,
        None => vec![1; n],
    };
    let weights = match doc.get("weights").and_then(|v| v.as_table()) {
        Some(w) => Some(get_matrix(w, "W")?),
        None => None,
    };
    let mut relations = Vec::new();
    if let Some(rels) = doc.get("relation") {
        let arr = rels
            .as_array()
            .ok_or_else(|| FileError::Field("[[relation]] blocks".into()))?;
        for item in arr {
            let table = item
                .as_table()
                .ok_or_else(|| FileError::Field("relation entry".into()))?;
            let i = get_usize(table, "i")?;
            let j = get_usize(table, "j")?;
            if i == 0 || j == 0 {
                return Err(FileError::Field("relation indices are 1-based".into()));
            }
            let rsrc = table
                .get("r")
                .and_then(|v| v.as_str())
                .ok_or_else(|| FileError::Field("relation field r".into()))?;
            let terms = relation_terms_from_str(rsrc, total, n)?;
            relations.push(RelationData {
                i: i - 1,
                j: j - 1,
                terms,
            });
        }
    }
    let mut strata = Vec::new();
    if let Some(sts) = doc.get("stratum") {
        let arr = sts
            .as_array()
            .ok_or_else(|| FileError::Field("[[stratum]] blocks".into()))?;
        for item in arr {
            let table = item
                .as_table()
                .ok_or_else(|| FileError::Field("stratum entry".into()))?;
            let label = table
                .get("label")
                .and_then(|v| v.as_str())
                .map(|s| s.to_string());
            strata.push(RawStratum {
                label,
                vanish: str_array(table.get("vanish"))?,
                invert: str_array(table.get("invert"))?,
            });
        }
    }
    Ok(AlgebraFile {
        spec: OreSpecData {
            n,
            m,
            s,
            weights,
            skew_constants,
            relations,
        },
        strata,
    })
}

fn get_usize(t: &toml::Table, key: &str) -> Result<usize, FileError> {
    t.get(key)
        .and_then(|v| v.as_integer())
        .filter(|&v| v >= 0)
        .map(|v| v as usize)
        .ok_or_else(|| FileError::Field(format!("nonnegative integer '{}'", key)))
}

fn int_array(v: &toml::Value, name: &str) -> Result<Vec<i64>, FileError> {
    v.as_array()
        .map(|a| {
            a.iter()
                .map(|x| {
                    x.as_integer()
                        .ok_or_else(|| FileError::Field(format!("integers in '{}'", name)))
                })
                .collect()
        })
        .ok_or_else(|| FileError::Field(format!("array '{}'", name)))?
}

fn get_matrix(t: &toml::Table, key: &str) -> Result<IntMat, FileError> {
    let rows = t
        .get(key)
        .and_then(|v| v.as_array())
        .ok_or_else(|| FileError::Field(format!("matrix '{}'", key)))?;
    let mut data = Vec::new();
    let mut width = None;
    for row in rows {
        let r = int_array(row, key)?;
        if let Some(w) = width {
            if r.len() != w {
                return Err(FileError::Field(format!("ragged rows in matrix '{}'", key)));
            }
        } else {
            width = Some(r.len());
        }
        data.push(r);
    }
    if data.is_empty() {
        return Ok(IntMat::zeros(0, 0));
    }
    Ok(IntMat::from_rows(data))
}

fn str_array(v: Option<&toml::Value>) -> Result<Vec<String>, FileError> {
    match v {
        None => Ok(Vec::new()),
        Some(v) => v
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|x| {
                        x.as_str()
                            .map(|s| s.to_string())
                            .ok_or_else(|| FileError::Field("strings in stratum lists".into()))
                    })
                    .collect()
            })
            .ok_or_else(|| FileError::Field("stratum lists must be arrays".into()))?,
    }
}

/// Lower the file's stratum declarations into elements of the instantiated
/// algebra.
pub fn stratum_decls(
    file: &AlgebraFile,
    alg: &Arc<OreAlgebra>,
) -> Result<Vec<StratumDecl>, FileError> {
    file.strata
        .iter()
        .map(|raw| {
            Ok(StratumDecl {
                label: raw.label.clone(),
                vanish: raw
                    .vanish
                    .iter()
                    .map(|s| element_from_str(alg, s))
                    .collect::<Result<_, _>>()?,
                invert: raw
                    .invert
                    .iter()
                    .map(|s| element_from_str(alg, s))
                    .collect::<Result<_, _>>()?,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

fn fmt_int_laurent(c: &IntLaurent) -> String {
    if c.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (idx, (&k, &v)) in c.0.iter().rev().enumerate() {
        let mag = v.abs();
        let sign = if v < 0 {
            "- "
        } else if idx > 0 {
            "+ "
        } else {
            ""
        };
        let body = match (k, mag) {
            (0, m) => format!("{}", m),
            (1, 1) => "q".to_string(),
            (1, m) => format!("{}*q", m),
            (p, 1) => format!("q^{}", p),
            (p, m) => format!("{}*q^{}", m, p),
        };
        parts.push(format!("{}{}", sign, body));
    }
    parts.join(" ")
}

fn fmt_relation(terms: &[(Vec<i64>, IntLaurent)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (expo, coeff) in terms {
        let mono: Vec<String> = expo
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        let coeff_str = if coeff.0.len() == 1 {
            let (&k, &v) = coeff.0.iter().next().unwrap();
            match (k, v) {
                (0, 1) if !mono.is_empty() => String::new(),
                _ => fmt_int_laurent(coeff),
            }
        } else {
            format!("({})", fmt_int_laurent(coeff))
        };
        let body = match (coeff_str.is_empty(), mono.is_empty()) {
            (true, false) => mono.join("*"),
            (false, true) => coeff_str,
            (false, false) => format!("{}*{}", coeff_str, mono.join("*")),
            (true, true) => "1".into(),
        };
        parts.push(body);
    }
    parts.join(" + ")
}

fn fmt_rows(m: &IntMat) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Serialize back to the file format; parses to an identical spec.
pub fn serialize_algebra_file(file: &AlgebraFile) -> String {
    let spec = &file.spec;
    let mut out = String::new();
    out.push_str("[algebra]\n");
    out.push_str(&format!("n = {}\n", spec.n));
    out.push_str(&format!("m = {}\n", spec.m));
    out.push_str(&format!("S = {}\n", fmt_rows(&spec.s)));
    out.push_str(&format!(
        "skew_constants = [{}]\n",
        spec.skew_constants
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    if let Some(w) = &spec.weights {
        out.push_str("\n[weights]\n");
        out.push_str(&format!("W = {}\n", fmt_rows(w)));
    }
    for rel in &spec.relations {
        out.push_str("\n[[relation]]\n");
        out.push_str(&format!("i = {}\n", rel.i + 1));
        out.push_str(&format!("j = {}\n", rel.j + 1));
        out.push_str(&format!("r = \"{}\"\n", fmt_relation(&rel.terms)));
    }
    for st in &file.strata {
        out.push_str("\n[[stratum]]\n");
        if let Some(label) = &st.label {
            out.push_str(&format!("label = \"{}\"\n", label));
        }
        out.push_str(&format!(
            "vanish = [{}]\n",
            st.vanish
                .iter()
                .map(|s| format!("\"{}\"", s))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!(
            "invert = [{}]\n",
            st.invert
                .iter()
                .map(|s| format!("\"{}\"", s))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    out
}

/// Parse a character file: `[character]` with string arrays `nu` and
/// `alpha`, each entry an expression over `e`.
pub fn parse_character_file(
    src: &str,
    l: u32,
) -> Result<CentralCharacter, FileError> {
    let doc: toml::Table = src
        .parse()
        .map_err(|e: toml::de::Error| FileError::Toml(e.to_string()))?;
    let table = doc
        .get("character")
        .and_then(|v| v.as_table())
        .ok_or_else(|| FileError::Field("[character] table".into()))?;
    let nu = str_array(table.get("nu"))?
        .iter()
        .map(|s| scalar_from_str(s, l))
        .collect::<Result<Vec<_>, _>>()?;
    let alpha = str_array(table.get("alpha"))?
        .iter()
        .map(|s| scalar_from_str(s, l))
        .collect::<Result<Vec<_>, _>>()?;
    CentralCharacter::new(nu, alpha)
        .map_err(|e| FileError::Semantics(format!("bad character: {}", e)))
}
