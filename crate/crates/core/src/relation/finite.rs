use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Accessibility, Capabilities};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{CompoundState, ScaledState, SpaceId, StatePoint};

/// Dense square boolean matrix, one bit per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn grow(&mut self, n: usize) {
        let mut next = BitMatrix::new(n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    next.set(i, j, true);
                }
            }
        }
        *self = next;
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }

    /// Whether every pair set in `self` is also set in `other`.
    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Warshall in place: reflexive-transitive closure.
    pub fn close(&mut self) {
        for i in 0..self.n {
            self.set(i, i, true);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    self.or_row_into(k, i);
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, PartialEq)]
enum NodeKind<F> {
    Simple(StatePoint<F>),
    Product(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq)]
struct Node<F> {
    name: String,
    equilibrium: bool,
    kind: NodeKind<F>,
}

/// Explicit relation over a finite node set, optionally with materialized
/// pair products `(X, Y)` of its simple nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteRelation<F: Real = f64> {
    space: SpaceId,
    nodes: Vec<Node<F>>,
    by_name: HashMap<String, NodeId>,
    products: HashMap<(NodeId, NodeId), NodeId>,
    rel: BitMatrix,
}

impl<F: Real> FiniteRelation<F> {
    pub fn new(space: SpaceId) -> Self {
        FiniteRelation {
            space,
            nodes: Vec::new(),
            by_name: HashMap::new(),
            products: HashMap::new(),
            rel: BitMatrix::new(0),
        }
    }

    pub fn space(&self) -> &SpaceId {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    fn push(&mut self, node: Node<F>) -> Result<NodeId> {
        if self.by_name.contains_key(&node.name) {
            return Err(Error::InvalidParameter(format!("duplicate node `{}`", node.name)));
        }
        let id = NodeId(self.nodes.len());
        self.by_name.insert(node.name.clone(), id);
        self.nodes.push(node);
        self.rel.grow(self.nodes.len());
        Ok(id)
    }

    pub fn add_node(&mut self, name: &str, equilibrium: bool, coords: Vec<F>) -> Result<NodeId> {
        let state = StatePoint::new(self.space.clone(), coords, equilibrium)?.labeled(name);
        self.push(Node {
            name: name.to_string(),
            equilibrium,
            kind: NodeKind::Simple(state),
        })
    }

    /// Materializes the pair `(a, b)` of two simple nodes. The product is an
    /// equilibrium state iff both factors are.
    pub fn add_product(&mut self, name: Option<&str>, a: NodeId, b: NodeId) -> Result<NodeId> {
        for id in [a, b] {
            if self.parts(id).is_some() {
                return Err(Error::InvalidParameter(
                    "products are materialized only up to pair depth".into(),
                ));
            }
        }
        if let Some(&id) = self.products.get(&(a, b)) {
            return Ok(id);
        }
        let name = name
            .map(str::to_string)
            .unwrap_or_else(|| format!("({},{})", self.nodes[a.0].name, self.nodes[b.0].name));
        let equilibrium = self.nodes[a.0].equilibrium && self.nodes[b.0].equilibrium;
        let id = self.push(Node {
            name,
            equilibrium,
            kind: NodeKind::Product(a, b),
        })?;
        self.products.insert((a, b), id);
        Ok(id)
    }

    pub fn add_edge(&mut self, from: NodeId, to: NodeId) {
        self.rel.set(from.0, to.0, true);
    }

    pub fn remove_edge(&mut self, from: NodeId, to: NodeId) {
        self.rel.set(from.0, to.0, false);
    }

    /// Replaces the relation by its reflexive-transitive closure.
    pub fn close(&mut self) {
        self.rel.close();
    }

    /// Raw matrix lookup.
    #[inline]
    pub fn related(&self, from: NodeId, to: NodeId) -> bool {
        self.rel.get(from.0, to.0)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.rel
    }

    pub fn id(&self, name: &str) -> Result<NodeId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.nodes[id.0].name
    }

    pub fn is_equilibrium(&self, id: NodeId) -> bool {
        self.nodes[id.0].equilibrium
    }

    /// Coordinates of a simple node; empty for products.
    pub fn coords(&self, id: NodeId) -> &[F] {
        match &self.nodes[id.0].kind {
            NodeKind::Simple(s) => &s.coords,
            NodeKind::Product(..) => &[],
        }
    }

    pub fn parts(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id.0].kind {
            NodeKind::Product(a, b) => Some((a, b)),
            NodeKind::Simple(_) => None,
        }
    }

    pub fn product(&self, a: NodeId, b: NodeId) -> Option<NodeId> {
        self.products.get(&(a, b)).copied()
    }

    pub fn has_products(&self) -> bool {
        !self.products.is_empty()
    }

    /// Whether two nodes live in the same (simple or pair) space.
    pub fn same_space(&self, a: NodeId, b: NodeId) -> bool {
        self.parts(a).is_some() == self.parts(b).is_some()
    }

    pub fn point(&self, id: NodeId) -> Option<&StatePoint<F>> {
        match &self.nodes[id.0].kind {
            NodeKind::Simple(s) => Some(s),
            NodeKind::Product(..) => None,
        }
    }

    pub fn node_state(&self, id: NodeId) -> CompoundState<F> {
        match &self.nodes[id.0].kind {
            NodeKind::Simple(s) => CompoundState::single(s.clone()),
            NodeKind::Product(a, b) => {
                let parts = [a, b]
                    .iter()
                    .map(|p| ScaledState {
                        scale: F::one(),
                        state: self.point(**p).expect("products have simple factors").clone(),
                    })
                    .collect();
                CompoundState::from_parts(parts).expect("non-empty")
            }
        }
    }

    fn resolve_point(&self, p: &StatePoint<F>) -> Result<NodeId> {
        if p.space_id != self.space {
            return Err(Error::UnknownSpace(p.space_id.0.clone()));
        }
        if let Some(l) = &p.label {
            return self.id(l);
        }
        self.ids()
            .find(|id| self.point(*id).is_some_and(|s| s.same_point(p)))
            .ok_or_else(|| Error::UnknownNode(p.to_string()))
    }

    /// Maps a compound query onto a materialized node.
    pub fn resolve(&self, c: &CompoundState<F>) -> Result<NodeId> {
        if let Some(p) = c.as_single() {
            return self.resolve_point(p);
        }
        let parts = c.parts();
        if parts.len() == 2 && parts.iter().all(|p| p.scale == F::one()) {
            let a = self.resolve_point(&parts[0].state)?;
            let b = self.resolve_point(&parts[1].state)?;
            return self.product(a, b).ok_or_else(|| Error::NotMaterialized(c.to_string()));
        }
        Err(Error::NotMaterialized(c.to_string()))
    }

    pub fn is_closed(&self) -> bool {
        let mut c = self.rel.clone();
        c.close();
        c == self.rel
    }

    /// Parses the edge-list format:
    ///
    /// ```text
    /// # comment
    /// space NAME
    /// node NAME eq|noneq [coords...]
    /// product NAME A B
    /// FROM TO
    /// ```
    ///
    /// Nodes first mentioned in an edge are declared as non-equilibrium
    /// nodes without coordinates.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rel = FiniteRelation::new(SpaceId::new("finite"));
        let mut seen_node = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            match toks[0] {
                "space" => {
                    if seen_node {
                        return Err(err("`space` must precede all nodes"));
                    }
                    let name = toks.get(1).ok_or_else(|| err("missing space name"))?;
                    rel.space = SpaceId::new(*name);
                }
                "node" => {
                    seen_node = true;
                    let name = toks.get(1).ok_or_else(|| err("missing node name"))?;
                    let eq = match toks.get(2) {
                        Some(&"eq") => true,
                        Some(&"noneq") => false,
                        _ => return Err(err("expected `eq` or `noneq`")),
                    };
                    let coords = toks[3..]
                        .iter()
                        .map(|t| t.parse::<f64>().map(F::lit).map_err(|_| err("bad coordinate")))
                        .collect::<Result<Vec<F>>>()?;
                    rel.add_node(name, eq, coords).map_err(|e| err(&e.to_string()))?;
                }
                "product" => {
                    seen_node = true;
                    if toks.len() != 4 {
                        return Err(err("expected `product NAME A B`"));
                    }
                    let a = rel.id(toks[2]).map_err(|e| err(&e.to_string()))?;
                    let b = rel.id(toks[3]).map_err(|e| err(&e.to_string()))?;
                    rel.add_product(Some(toks[1]), a, b).map_err(|e| err(&e.to_string()))?;
                }
                _ => {
                    if toks.len() != 2 {
                        return Err(err("expected `FROM TO`"));
                    }
                    seen_node = true;
                    let mut ids = [NodeId(0); 2];
                    for (k, t) in toks.iter().enumerate() {
                        ids[k] = match rel.id(t) {
                            Ok(id) => id,
                            Err(_) => rel.add_node(t, false, Vec::new())?,
                        };
                    }
                    rel.add_edge(ids[0], ids[1]);
                }
            }
        }
        Ok(rel)
    }

    /// Renders the model back to the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "space {}", self.space);
        for id in self.ids() {
            let n = &self.nodes[id.0];
            match &n.kind {
                NodeKind::Simple(s) => {
                    let _ = write!(out, "node {} {}", n.name, if n.equilibrium { "eq" } else { "noneq" });
                    for c in &s.coords {
                        let _ = write!(out, " {c}");
                    }
                    out.push('\n');
                }
                NodeKind::Product(a, b) => {
                    let _ = writeln!(out, "product {} {} {}", n.name, self.name(*a), self.name(*b));
                }
            }
        }
        for i in self.ids() {
            for j in self.ids() {
                if i != j && self.related(i, j) {
                    let _ = writeln!(out, "{} {}", self.name(i), self.name(j));
                }
            }
        }
        out
    }
}

/// Smallest reflexive and transitive relation containing `model`'s.
pub fn transitive_reflexive_closure<F: Real>(model: &FiniteRelation<F>) -> FiniteRelation<F> {
    let mut out = model.clone();
    out.rel.close();
    out
}

impl<F: Real> Accessibility<F> for FiniteRelation<F> {
    fn precedes(&self, a: &CompoundState<F>, b: &CompoundState<F>) -> Result<bool> {
        let (ia, ib) = (self.resolve(a)?, self.resolve(b)?);
        Ok(self.related(ia, ib))
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            scaling: false,
            composition: self.has_products(),
        }
    }

    fn enumerate_states(&self) -> Option<Vec<CompoundState<F>>> {
        Some(self.ids().map(|id| self.node_state(id)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> (FiniteRelation, [NodeId; 3]) {
        let mut r = FiniteRelation::new(SpaceId::new("t"));
        let a = r.add_node("a", true, vec![]).unwrap();
        let b = r.add_node("b", true, vec![]).unwrap();
        let c = r.add_node("c", true, vec![]).unwrap();
        (r, [a, b, c])
    }

    #[test]
    fn closure_of_empty_relation_is_diagonal() {
        let (r, [a, b, _]) = abc();
        let c = transitive_reflexive_closure(&r);
        assert!(c.related(a, a) && c.related(b, b));
        assert!(!c.related(a, b) && !c.related(b, a));
    }

    #[test]
    fn closure_adds_transitive_pair() {
        let (mut r, [a, b, c]) = abc();
        r.add_edge(a, b);
        r.add_edge(b, c);
        let cl = transitive_reflexive_closure(&r);
        assert!(cl.related(a, c));
        assert!(!cl.related(c, a));
        assert!(r.matrix().is_subset(cl.matrix()));
        assert_eq!(transitive_reflexive_closure(&cl), cl);
        assert!(cl.is_closed());
        assert!(!r.is_closed());
    }

    #[test]
    fn strict_precedence_on_chain() {
        let (mut r, [a, _, c]) = abc();
        r.add_edge(NodeId(0), NodeId(1));
        r.add_edge(NodeId(1), NodeId(2));
        let r = transitive_reflexive_closure(&r);
        let (sa, sc) = (r.node_state(a), r.node_state(c));
        assert!(r.strictly_precedes(&sa, &sc).unwrap());
        assert!(r.adiabatically_equivalent(&sa, &sa).unwrap());
        assert!(!r.strictly_precedes(&sa, &sa).unwrap());
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "# demo\nspace g\nnode a eq 0\nnode b noneq 1.5 2\nproduct ab a b\na b\nb c\n";
        let r: FiniteRelation = FiniteRelation::parse(text).unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r.coords(r.id("b").unwrap()), &[1.5, 2.0]);
        assert!(!r.is_equilibrium(r.id("c").unwrap()));
        let again: FiniteRelation = FiniteRelation::parse(&r.to_edge_list()).unwrap();
        assert_eq!(again.to_edge_list(), r.to_edge_list());

        assert!(matches!(
            FiniteRelation::<f64>::parse("node a maybe"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            FiniteRelation::<f64>::parse("a b c"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn resolves_products_and_rejects_foreign_space() {
        let (mut r, [a, b, _]) = abc();
        let ab = r.add_product(None, a, b).unwrap();
        assert_eq!(r.resolve(&r.node_state(ab)).unwrap(), ab);
        let alien = StatePoint::new(SpaceId::new("other"), vec![], true).unwrap();
        assert!(matches!(
            r.precedes(&alien.clone().into(), &alien.into()),
            Err(Error::UnknownSpace(_))
        ));
        assert!(r.add_product(None, ab, a).is_err());
    }
}
