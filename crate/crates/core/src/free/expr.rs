//! Expressions over the free carrier:
//!
//! ```text
//! expr := term (("+" | "-") term)*
//! term := scalar "*" term | atom
//! atom := op "(" index ["," index] "," expr "," expr ")" | tree | "(" expr ")"
//! ```
//!
//! `prec` and `succ` take one index; `mul`, `circ` and `bracket` take a pair
//! and are read through the pair lift of `prec` and `succ`.

use std::str::FromStr;

use super::carrier::FreeDendCarrier;
use super::tree::{parse_tree_at, Lexer, Tree};
use crate::algebra::{family_to_pair, PairIndexedOp, Role};
use crate::constructions::{assoc_from_dend, lie_from_prelie, prelie_from_dend};
use crate::error::{Error, Result};
use crate::index::Elem;
use crate::linear::{LinComb, Scalar};

enum Item {
    Bare(String, usize),
    Value(LinComb<Tree>),
}

struct Eval<'a> {
    lx: Lexer<'a>,
    carrier: &'a FreeDendCarrier,
}

impl Eval<'_> {
    fn expr(&mut self) -> Result<LinComb<Tree>> {
        let first = self.term()?;
        self.rest(first)
    }

    /// Continues a sum after its first term.
    fn rest(&mut self, mut acc: LinComb<Tree>) -> Result<LinComb<Tree>> {
        loop {
            if self.lx.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.lx.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar(&mut self) -> Result<Scalar> {
        self.lx.skip_ws();
        let start = self.lx.pos;
        let rest = &self.lx.text[start..];
        let len = rest
            .char_indices()
            .find(|(i, c)| !(c.is_ascii_digit() || *c == '/' || (*i == 0 && *c == '-')))
            .map_or(rest.len(), |(i, _)| i);
        self.lx.pos += len;
        Scalar::from_str(&rest[..len]).map_err(|_| Error::Parse {
            what: "expression",
            position: start,
            message: format!("malformed scalar `{}`", &rest[..len]),
        })
    }

    fn term(&mut self) -> Result<LinComb<Tree>> {
        match self.lx.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => {
                let k = self.scalar()?;
                self.lx.expect('*')?;
                Ok(self.term()?.scale(&k))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<LinComb<Tree>> {
        if self.lx.eat('(') {
            let v = self.expr()?;
            self.lx.expect(')')?;
            return Ok(v);
        }
        match self.item(false)? {
            Item::Value(v) => Ok(v),
            Item::Bare(name, pos) => Err(Error::Parse {
                what: "expression",
                position: pos,
                message: format!("expected a tree or an operation, found `{name}`"),
            }),
        }
    }

    /// A bare identifier (an index name or `e`), or a value. As a call
    /// argument (`whole`) a value extends to a full sum.
    fn item(&mut self, whole: bool) -> Result<Item> {
        self.lx.skip_ws();
        let start = self.lx.pos;
        let first = self.lx.peek();
        if !matches!(first, Some(c) if c.is_alphanumeric() || c == '_') {
            return Ok(Item::Value(self.expr()?));
        }
        let name = self.lx.ident()?;
        match self.lx.peek() {
            Some('[') => {
                self.lx.pos = start;
                let t = parse_tree_at(&mut self.lx, self.carrier.decorations(), self.carrier.edge_names())?;
                self.finish(LinComb::basis(t), whole)
            }
            Some('(') => {
                let v = self.call(name, start)?;
                self.finish(v, whole)
            }
            Some('*' | '/') if name.chars().all(|c| c.is_ascii_digit()) => {
                self.lx.pos = start;
                Ok(Item::Value(self.expr()?))
            }
            _ => Ok(Item::Bare(name.to_string(), start)),
        }
    }

    fn finish(&mut self, v: LinComb<Tree>, whole: bool) -> Result<Item> {
        Ok(Item::Value(if whole { self.rest(v)? } else { v }))
    }

    fn value(&mut self, item: Item) -> Result<LinComb<Tree>> {
        match item {
            Item::Value(v) => Ok(v),
            Item::Bare(name, _) if name == "e" => Ok(LinComb::basis(Tree::EMPTY)),
            Item::Bare(name, pos) => Err(Error::Parse {
                what: "expression",
                position: pos,
                message: format!("expected a tree, found `{name}`"),
            }),
        }
    }

    fn index(&self, item: &Item) -> Result<Elem> {
        match item {
            Item::Bare(name, _) => self.carrier.index().element(name),
            Item::Value(_) => Err(Error::Arity("expected an index element name".into())),
        }
    }

    fn call(&mut self, op: &str, start: usize) -> Result<LinComb<Tree>> {
        let role: Role = op.parse().map_err(|_| Error::UnknownName {
            kind: "operation",
            name: op.to_string(),
        })?;
        let indices = match role {
            Role::Prec | Role::Succ => 1,
            Role::Mul | Role::Circ | Role::Bracket => 2,
            Role::Ast => {
                return Err(Error::UnknownName {
                    kind: "operation",
                    name: op.to_string(),
                })
            }
        };
        self.lx.expect('(')?;
        let mut items = vec![self.item(true)?];
        while self.lx.eat(',') {
            items.push(self.item(true)?);
        }
        self.lx.expect(')')?;
        if items.len() != indices + 2 {
            return Err(Error::Arity(format!(
                "`{op}` at position {start} takes {indices} index argument(s) and two operands, \
                 found {} argument(s)",
                items.len()
            )));
        }
        let mut items = items.into_iter();
        let a = self.index(&items.next().expect("counted"))?;
        let b = if indices == 2 {
            Some(self.index(&items.next().expect("counted"))?)
        } else {
            None
        };
        let x = self.value(items.next().expect("counted"))?;
        let y = self.value(items.next().expect("counted"))?;
        let c = self.carrier;
        match (role, b) {
            (Role::Prec, None) => c.free_prec(&x, &y, a),
            (Role::Succ, None) => c.free_succ(&x, &y, a),
            (_, Some(b)) => pair_op(c, role)?.apply(a, b, &x, &y),
            _ => unreachable!("index count matches role"),
        }
    }
}

/// `mul`, `circ` or `bracket` on the free carrier, through the pair lift of
/// `prec` and `succ`.
pub fn pair_op(c: &FreeDendCarrier, role: Role) -> Result<PairIndexedOp<Tree>> {
    let (prec, succ) = c.ops();
    let prec = family_to_pair(Role::Prec, &prec)?;
    let succ = family_to_pair(Role::Succ, &succ)?;
    match role {
        Role::Mul => assoc_from_dend(&prec, &succ),
        Role::Circ => prelie_from_dend(&prec, &succ),
        Role::Bracket => lie_from_prelie(&prelie_from_dend(&prec, &succ)?),
        _ => Err(Error::UnknownName {
            kind: "pair operation",
            name: role.to_string(),
        }),
    }
}

/// Evaluates an expression over `carrier`.
pub fn eval_expr(text: &str, carrier: &FreeDendCarrier) -> Result<LinComb<Tree>> {
    let mut ev = Eval {
        lx: Lexer::new(text, "expression"),
        carrier,
    };
    let v = ev.expr()?;
    if !ev.lx.at_end() {
        return Err(ev.lx.error("trailing input"));
    }
    Ok(v)
}
