//! Planar rooted binary trees with decorated vertices and labelled edges.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index::Elem;

/// A decorated tree: empty (`e`), or a vertex with a label and up to two
/// subtrees, each non-empty subtree hanging from a labelled edge.
///
/// Vertex labels index the carrier's decoration list, edge labels are index
/// elements. Trees are immutable and share subtrees.
#[derive(Clone, Default)]
pub struct Tree(Option<Arc<Node>>);

#[derive(Debug)]
pub struct Node {
    label: usize,
    left: Option<(Elem, Tree)>,
    right: Option<(Elem, Tree)>,
    size: usize,
    /// `[size] ++ shape ++ labels`, where `shape` lists left-subtree sizes
    /// in preorder and `labels` lists, in preorder, each vertex label
    /// followed by its left and right edge labels (offset by one, zero when
    /// absent). Lexicographic order on keys is the tree order, and equal
    /// keys mean equal trees.
    key: Box<[u32]>,
}

impl Tree {
    pub const EMPTY: Tree = Tree(None);

    pub fn leaf(label: usize) -> Tree {
        Tree::node(label, None, None)
    }

    /// A vertex with optional edges to subtrees. An edge to the empty tree
    /// is dropped together with its label.
    pub fn node(label: usize, left: Option<(Elem, Tree)>, right: Option<(Elem, Tree)>) -> Tree {
        let left = left.filter(|(_, t)| !t.is_empty());
        let right = right.filter(|(_, t)| !t.is_empty());
        let (ls, rs) = (
            left.as_ref().map_or(0, |(_, t)| t.size()),
            right.as_ref().map_or(0, |(_, t)| t.size()),
        );
        let size = 1 + ls + rs;
        let mut key = Vec::with_capacity(1 + 4 * size);
        key.push(size as u32);
        key.push(ls as u32);
        fn part(t: &Option<(Elem, Tree)>) -> Option<&[u32]> {
            t.as_ref().and_then(|(_, t)| t.root()).map(|n| &n.key[..])
        }
        let (lk, rk) = (part(&left), part(&right));
        // shape: skip each child's size entry, take its shape block
        if let Some(k) = lk {
            key.extend_from_slice(&k[1..ls + 1]);
        }
        if let Some(k) = rk {
            key.extend_from_slice(&k[1..rs + 1]);
        }
        let edge = |t: &Option<(Elem, Tree)>| t.as_ref().map_or(0, |(e, _)| *e as u32 + 1);
        key.push(label as u32);
        key.push(edge(&left));
        key.push(edge(&right));
        if let Some(k) = lk {
            key.extend_from_slice(&k[ls + 1..]);
        }
        if let Some(k) = rk {
            key.extend_from_slice(&k[rs + 1..]);
        }
        Tree(Some(Arc::new(Node {
            label,
            left,
            right,
            size,
            key: key.into_boxed_slice(),
        })))
    }

    fn key(&self) -> &[u32] {
        self.0.as_ref().map_or(&[], |n| &n.key[..])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn root(&self) -> Option<&Node> {
        self.0.as_deref()
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.size)
    }

    /// Largest vertex label and largest edge label, if any.
    pub fn max_labels(&self) -> (Option<usize>, Option<Elem>) {
        let Some(n) = self.root() else {
            return (None, None);
        };
        let mut vx = Some(n.label);
        let mut ex = None;
        for (e, t) in [&n.left, &n.right].into_iter().flatten() {
            let (v, w) = t.max_labels();
            vx = vx.max(v);
            ex = ex.max(Some(*e)).max(w);
        }
        (vx, ex)
    }

    /// Text form with the given names for vertex and edge labels.
    pub fn display<'a>(&'a self, vertex: &'a [String], edge: &'a [String]) -> TreeDisplay<'a> {
        TreeDisplay {
            tree: self,
            vertex,
            edge,
        }
    }
}

impl Node {
    pub fn label(&self) -> usize {
        self.label
    }

    pub fn left(&self) -> Option<&(Elem, Tree)> {
        self.left.as_ref()
    }

    pub fn right(&self) -> Option<&(Elem, Tree)> {
        self.right.as_ref()
    }

    pub fn left_tree(&self) -> &Tree {
        self.left.as_ref().map_or(&Tree::EMPTY, |(_, t)| t)
    }

    pub fn right_tree(&self) -> &Tree {
        self.right.as_ref().map_or(&Tree::EMPTY, |(_, t)| t)
    }

    pub fn left_edge(&self) -> Option<Elem> {
        self.left.as_ref().map(|(e, _)| *e)
    }

    pub fn right_edge(&self) -> Option<Elem> {
        self.right.as_ref().map(|(e, _)| *e)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a.key == b.key,
            _ => false,
        }
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

/// Vertex count first, then shape, then labels in preorder.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(other.key())
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Label-index form, e.g. `0[1: 1[], ]`.
impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tree(f, self, &|v| v.to_string(), &|e| e.to_string())
    }
}

pub struct TreeDisplay<'a> {
    tree: &'a Tree,
    vertex: &'a [String],
    edge: &'a [String],
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tree(
            f,
            self.tree,
            &|v| self.vertex.get(v).cloned().unwrap_or_else(|| format!("?{v}")),
            &|e| self.edge.get(e).cloned().unwrap_or_else(|| format!("?{e}")),
        )
    }
}

fn write_tree(
    f: &mut fmt::Formatter<'_>,
    t: &Tree,
    vertex: &dyn Fn(usize) -> String,
    edge: &dyn Fn(Elem) -> String,
) -> fmt::Result {
    let Some(n) = t.root() else {
        return f.write_str("e");
    };
    write!(f, "{}[", vertex(n.label))?;
    if n.left.is_none() && n.right.is_none() {
        return f.write_str("]");
    }
    if let Some((e, sub)) = &n.left {
        write!(f, "{}: ", edge(*e))?;
        write_tree(f, sub, vertex, edge)?;
    }
    f.write_str(", ")?;
    if let Some((e, sub)) = &n.right {
        write!(f, "{}: ", edge(*e))?;
        write_tree(f, sub, vertex, edge)?;
    }
    f.write_str("]")
}

/// A cursor over tree or expression text that skips whitespace.
pub(crate) struct Lexer<'a> {
    pub(crate) text: &'a str,
    pub(crate) pos: usize,
    pub(crate) what: &'static str,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str, what: &'static str) -> Self {
        Lexer { text, pos: 0, what }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            what: self.what,
            position: self.pos,
            message: message.into(),
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// An identifier: letters, digits and underscores.
    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(match rest.chars().next() {
                Some(c) => self.error(format!("expected a label, found `{c}`")),
                None => self.error("expected a label, found end of input"),
            });
        }
        self.pos += len;
        Ok(&self.text[start..start + len])
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UndeclaredLabel(name.to_string()))
}

pub(crate) fn parse_tree_at(lx: &mut Lexer<'_>, vertex: &[String], edge: &[String]) -> Result<Tree> {
    let start = lx.pos;
    let name = lx.ident()?;
    if name == "e" && lx.peek() != Some('[') {
        return Ok(Tree::EMPTY);
    }
    let label = lookup(vertex, name).map_err(|e| {
        if lx.peek() == Some('[') {
            e
        } else {
            Error::Parse {
                what: lx.what,
                position: start,
                message: format!("expected `[` after `{name}`"),
            }
        }
    })?;
    lx.expect('[')?;
    if lx.eat(']') {
        return Ok(Tree::leaf(label));
    }
    let left = parse_subtree(lx, vertex, edge, ',')?;
    lx.expect(',')?;
    let right = parse_subtree(lx, vertex, edge, ']')?;
    lx.expect(']')?;
    Ok(Tree::node(label, left, right))
}

fn parse_subtree(
    lx: &mut Lexer<'_>,
    vertex: &[String],
    edge: &[String],
    end: char,
) -> Result<Option<(Elem, Tree)>> {
    if lx.peek() == Some(end) {
        return Ok(None);
    }
    let e = lookup(edge, lx.ident()?)?;
    lx.expect(':')?;
    let t = parse_tree_at(lx, vertex, edge)?;
    if t.is_empty() {
        return Err(lx.error("an edge must lead to a non-empty tree"));
    }
    Ok(Some((e, t)))
}

/// Parses `tree := "e" | label "[" [subtree] "," [subtree] "]"` with
/// `subtree := edge-label ":" tree`; `label[]` abbreviates `label[,]`.
pub fn parse_tree(text: &str, vertex: &[String], edge: &[String]) -> Result<Tree> {
    let mut lx = Lexer::new(text, "tree");
    let t = parse_tree_at(&mut lx, vertex, edge)?;
    if !lx.at_end() {
        return Err(lx.error("trailing input"));
    }
    Ok(t)
}

/// A tree with a vertex count uniform in `1..=max_vertices`, a shape drawn
/// by recursive uniform splitting, and uniform labels.
pub fn random_tree(
    rng: &mut ChaCha8Rng,
    x_count: usize,
    s_count: usize,
    max_vertices: usize,
) -> Tree {
    assert!(max_vertices >= 1 && x_count >= 1 && s_count >= 1);
    let n = draw(rng, max_vertices) + 1;
    grow(rng, n, x_count, s_count)
}

/// Uniform in `0..n`, drawn from 32-bit integers so seeded runs agree
/// across platforms.
fn draw(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.gen_range(0..n as u32) as usize
}

fn grow(rng: &mut ChaCha8Rng, n: usize, x_count: usize, s_count: usize) -> Tree {
    if n == 0 {
        return Tree::EMPTY;
    }
    let label = draw(rng, x_count);
    let k = draw(rng, n);
    let left = grow(rng, k, x_count, s_count);
    let right = grow(rng, n - 1 - k, x_count, s_count);
    let le = draw(rng, s_count);
    let re = draw(rng, s_count);
    Tree::node(label, Some((le, left)), Some((re, right)))
}

/// [`random_tree`] from a fresh generator seeded with `seed`.
pub fn random_tree_seeded(x_count: usize, s_count: usize, max_vertices: usize, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree(&mut rng, x_count, s_count, max_vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn text_examples() {
        let (x, s) = (names(&["x", "y"]), names(&["a", "b"]));
        assert!(parse_tree("e", &x, &s).unwrap().is_empty());
        assert_eq!(parse_tree("x[]", &x, &s).unwrap(), Tree::leaf(0));
        let t = parse_tree("x[ , a: y[]]", &x, &s).unwrap();
        assert_eq!(t, Tree::node(0, None, Some((0, Tree::leaf(1)))));
        assert_eq!(t.display(&x, &s).to_string(), "x[, a: y[]]");
        let u = parse_tree(" y [ b : x [ ] , ] ", &x, &s).unwrap();
        assert_eq!(u.display(&x, &s).to_string(), "y[b: x[], ]");
        assert_eq!(parse_tree("x[,]", &x, &s).unwrap(), Tree::leaf(0));
    }

    #[test]
    fn parse_errors() {
        let (x, s) = (names(&["x"]), names(&["a"]));
        match parse_tree("x[a: x[], ", &x, &s) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_tree("z[]", &x, &s), Err(Error::UndeclaredLabel(_))));
        assert!(matches!(parse_tree("x[q: x[], ]", &x, &s), Err(Error::UndeclaredLabel(_))));
        assert!(matches!(parse_tree("x[a: e, ]", &x, &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("x[] x[]", &x, &s), Err(Error::Parse { .. })));
    }

    #[test]
    fn order_is_size_then_shape_then_labels() {
        let small = Tree::leaf(1);
        let left = Tree::node(0, Some((0, Tree::leaf(0))), None);
        let right = Tree::node(0, None, Some((0, Tree::leaf(0))));
        assert!(small < left);
        assert!(right < left);
        assert!(Tree::leaf(0) < Tree::leaf(1));
        let relabelled = Tree::node(0, None, Some((1, Tree::leaf(0))));
        assert!(right < relabelled);
    }

    #[test]
    fn sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(random_tree(&mut rng, 2, 2, 1).size(), 1);
        assert_eq!(random_tree_seeded(2, 2, 6, 7), random_tree_seeded(2, 2, 6, 7));
        let mut shapes = BTreeSet::new();
        for _ in 0..1000 {
            let t = random_tree(&mut rng, 2, 2, 6);
            assert!((1..=6).contains(&t.size()));
            shapes.insert(format!("{t:?}"));
        }
        assert!(shapes.len() >= 2);
    }
}
