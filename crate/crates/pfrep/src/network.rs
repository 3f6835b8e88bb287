//! Edge-labelled digraphs over an algebra: holds, futures and presents,
//! anchored isomorphism search, and the representation checker.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, FiniteAlgebra, OpSymbol};
use crate::pfun::{self, Base, PartialFunction, Representation};
use crate::{Error, Result};

/// An edge-labelled digraph: at most one label per ordered vertex pair,
/// with a reflexive edge on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<String>,
    edges: BTreeMap<(usize, usize), Elem>,
}

impl Network {
    /// Builds a network, requiring distinct vertex names, in-range
    /// endpoints, labels below `n_labels`, and a reflexive edge everywhere.
    pub fn new(
        vertices: Vec<String>,
        edges: BTreeMap<(usize, usize), Elem>,
        n_labels: usize,
    ) -> Result<Self> {
        let nv = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::MalformedInput(format!(
                    "duplicate vertex name `{v}`"
                )));
            }
        }
        for (&(x, y), &l) in &edges {
            if x >= nv || y >= nv {
                return Err(Error::MalformedInput(format!(
                    "edge ({x}, {y}) mentions a vertex outside the {nv}-vertex network"
                )));
            }
            if l >= n_labels {
                return Err(Error::MalformedInput(format!(
                    "edge ({x}, {y}) has label {l} out of range (carrier size {n_labels})"
                )));
            }
        }
        for x in 0..nv {
            if !edges.contains_key(&(x, x)) {
                return Err(Error::MalformedInput(format!(
                    "vertex `{}` has no reflexive edge",
                    vertices[x]
                )));
            }
        }
        Ok(Network { vertices, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, x: usize) -> &str {
        &self.vertices[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn label(&self, x: usize, y: usize) -> Option<Elem> {
        self.edges.get(&(x, y)).copied()
    }

    pub fn reflexive_label(&self, x: usize) -> Elem {
        self.edges[&(x, x)]
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), Elem)> + '_ {
        self.edges.iter().map(|(&e, &l)| (e, l))
    }

    pub fn out_edges(&self, x: usize) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.edges
            .range((x, 0)..=(x, usize::MAX))
            .map(|(&(_, y), &l)| (y, l))
    }

    /// The edge pairs on which `a` holds: those labelled at or below `a`.
    pub fn holds(&self, alg: &FiniteAlgebra, a: Elem) -> Vec<(usize, usize)> {
        self.edges()
            .filter(|&(_, l)| alg.leq(l, a))
            .map(|(e, _)| e)
            .collect()
    }

    fn theta_all(&self, alg: &FiniteAlgebra) -> Vec<Vec<(usize, usize)>> {
        let mut thetas = vec![Vec::new(); alg.n()];
        for (e, l) in self.edges() {
            for (a, theta) in thetas.iter_mut().enumerate() {
                if alg.leq(l, a) {
                    theta.push(e);
                }
            }
        }
        thetas
    }

    /// Vertices reachable from `w` via one edge, in sorted order. Every
    /// vertex of `w` is included through its reflexive edge.
    pub fn future_vertices(&self, w: &[usize]) -> Vec<usize> {
        let out: BTreeSet<usize> = w
            .iter()
            .flat_map(|&x| self.out_edges(x).map(|(y, _)| y))
            .collect();
        out.into_iter().collect()
    }

    /// Vertices reachable from `w` via any edge path.
    pub fn future_closure_vertices(&self, w: &[usize]) -> Vec<usize> {
        let mut reach: BTreeSet<usize> = w.iter().copied().collect();
        let mut frontier: Vec<usize> = w.to_vec();
        while let Some(x) = frontier.pop() {
            for (y, _) in self.out_edges(x) {
                if reach.insert(y) {
                    frontier.push(y);
                }
            }
        }
        reach.into_iter().collect()
    }

    /// The induced subnetwork on the given vertices, which keep their names.
    pub fn induced(&self, verts: &[usize]) -> Network {
        let renumber: BTreeMap<usize, usize> =
            verts.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let edges = self
            .edges()
            .filter_map(|((x, y), l)| {
                Some(((*renumber.get(&x)?, *renumber.get(&y)?), l))
            })
            .collect();
        Network {
            vertices: verts
                .iter()
                .map(|&old| self.vertices[old].clone())
                .collect(),
            edges,
        }
    }

    /// One-step future of `w` as an induced subnetwork.
    pub fn future(&self, w: &[usize]) -> Network {
        self.induced(&self.future_vertices(w))
    }

    /// Transitive future of `w` as an induced subnetwork.
    pub fn future_closure(&self, w: &[usize]) -> Network {
        self.induced(&self.future_closure_vertices(w))
    }

    /// Vertices sharing a future with `x`: those reachable from `x` from
    /// which `x` is reachable back.
    pub fn present(&self, x: usize) -> Vec<usize> {
        self.future_closure_vertices(&[x])
            .into_iter()
            .filter(|&y| self.future_closure_vertices(&[y]).contains(&x))
            .collect()
    }
}

/// One way a network fails to represent an algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "condition")]
pub enum Failure {
    /// Some element holds on two edges leaving the same vertex.
    #[serde(rename = "functional")]
    NotFunctional {
        elem: Elem,
        vertex: usize,
        targets: Vec<usize>,
    },
    /// The edges where a result element holds are not the operation applied
    /// to the argument edge sets.
    #[serde(rename = "op-correct")]
    OpIncorrect {
        sym: OpSymbol,
        args: Vec<Elem>,
        missing: Vec<(usize, usize)>,
        extra: Vec<(usize, usize)>,
    },
    /// `a` is not below `b`, yet every edge where `a` holds also has `b`.
    #[serde(rename = "faithful")]
    Unfaithful { a: Elem, b: Elem },
}

/// Checker outcome: empty failures means the network represents the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks whether the network is a representation of the algebra: every
/// element must hold functionally, every operation must be computed
/// correctly by the labelling, and distinguishable elements must hold on
/// distinguishable edge sets.
pub fn is_representation(net: &Network, alg: &FiniteAlgebra) -> Verdict {
    for ((x, y), l) in net.edges() {
        assert!(
            l < alg.n(),
            "edge ({x}, {y}) labelled {l} outside the carrier"
        );
    }
    let nv = net.n_vertices();
    let thetas = net.theta_all(alg);
    let mut failures = Vec::new();

    let mut functional = vec![true; alg.n()];
    for (a, pairs) in thetas.iter().enumerate() {
        let mut i = 0;
        while i < pairs.len() {
            let mut j = i + 1;
            while j < pairs.len() && pairs[j].0 == pairs[i].0 {
                j += 1;
            }
            if j - i > 1 {
                functional[a] = false;
                failures.push(Failure::NotFunctional {
                    elem: a,
                    vertex: pairs[i].0,
                    targets: pairs[i..j].iter().map(|&(_, y)| y).collect(),
                });
            }
            i = j;
        }
    }

    let pfs: Vec<Option<PartialFunction>> = thetas
        .iter()
        .zip(&functional)
        .map(|(pairs, &ok)| {
            ok.then(|| PartialFunction::from_pairs(pairs.iter().copied()).unwrap())
        })
        .collect();

    let mut tasks: Vec<(OpSymbol, Vec<Elem>)> = Vec::new();
    for sym in alg.sig().symbols() {
        match sym.arity() {
            0 => tasks.push((sym, vec![])),
            1 => tasks.extend(alg.elems().map(|a| (sym, vec![a]))),
            _ => tasks.extend(
                alg.elems()
                    .flat_map(|a| alg.elems().map(move |b| (sym, vec![a, b]))),
            ),
        }
    }
    let op_failures: Vec<Failure> = tasks
        .par_iter()
        .filter_map(|(sym, args)| {
            let result = match args.as_slice() {
                [] => alg.eval_nullary(*sym).unwrap(),
                [a] => alg.eval_unary(*sym, *a).unwrap(),
                [a, b] => alg.eval_binary(*sym, *a, *b).unwrap(),
                _ => unreachable!(),
            };
            let expected = &thetas[result];
            let actual: Vec<(usize, usize)> = if args.iter().all(|&a| functional[a]) {
                let arg_fns: Vec<&PartialFunction> =
                    args.iter().map(|&a| pfs[a].as_ref().unwrap()).collect();
                pfun::eval_op(*sym, &arg_fns, nv).pairs().to_vec()
            } else {
                let arg_rels: Vec<&[(usize, usize)]> =
                    args.iter().map(|&a| thetas[a].as_slice()).collect();
                rel_eval(*sym, &arg_rels, nv)
            };
            if actual == *expected {
                None
            } else {
                Some(Failure::OpIncorrect {
                    sym: *sym,
                    args: args.clone(),
                    missing: expected.iter().filter(|p| !actual.contains(p)).copied().collect(),
                    extra: actual.iter().filter(|p| !expected.contains(p)).copied().collect(),
                })
            }
        })
        .collect();
    failures.extend(op_failures);

    let used: BTreeSet<Elem> = net.edges().map(|(_, l)| l).collect();
    for a in alg.elems() {
        for b in alg.elems() {
            if !alg.leq(a, b) && !used.iter().any(|&l| alg.leq(l, a) && !alg.leq(l, b)) {
                failures.push(Failure::Unfaithful { a, b });
            }
        }
    }

    failures.sort();
    failures.dedup();
    Verdict { failures }
}

/// Relation-level evaluation of a symbol, agreeing with the partial
/// function operations whenever the arguments are functional. Used so the
/// checker can still report operation mismatches on non-functional edge
/// sets.
fn rel_eval(sym: OpSymbol, args: &[&[(usize, usize)]], nv: usize) -> Vec<(usize, usize)> {
    fn normalize(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
        v.sort_unstable();
        v.dedup();
        v
    }
    fn successors(rel: &[(usize, usize)], x: usize) -> &[(usize, usize)] {
        let lo = rel.partition_point(|p| p.0 < x);
        let hi = rel.partition_point(|p| p.0 <= x);
        &rel[lo..hi]
    }
    fn compose_rel(a: &[(usize, usize)], b: &[(usize, usize)]) -> Vec<(usize, usize)> {
        normalize(
            a.iter()
                .flat_map(|&(x, y)| successors(b, y).iter().map(move |&(_, z)| (x, z)))
                .collect(),
        )
    }
    fn firsts(rel: &[(usize, usize)]) -> BTreeSet<usize> {
        rel.iter().map(|&(x, _)| x).collect()
    }
    fn diagonal(points: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
        points.into_iter().map(|x| (x, x)).collect()
    }
    fn unique_preimages(rel: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut count: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(x, y) in rel {
            count.entry(y).or_default().push(x);
        }
        count
            .into_iter()
            .filter(|(_, xs)| xs.len() == 1)
            .map(|(y, xs)| (y, xs[0]))
            .collect()
    }

    match sym {
        OpSymbol::Zero => Vec::new(),
        OpSymbol::Ident => diagonal(0..nv),
        OpSymbol::Compose => compose_rel(args[0], args[1]),
        OpSymbol::Meet => normalize(
            args[0]
                .iter()
                .filter(|p| args[1].binary_search(p).is_ok())
                .copied()
                .collect(),
        ),
        OpSymbol::PrefUnion => {
            let defined = firsts(args[0]);
            let mut out = args[0].to_vec();
            out.extend(args[1].iter().filter(|&&(x, _)| !defined.contains(&x)));
            normalize(out)
        }
        OpSymbol::Dom => diagonal(firsts(args[0])),
        OpSymbol::Ran => normalize(args[0].iter().map(|&(_, y)| (y, y)).collect()),
        OpSymbol::Antidom => {
            let defined = firsts(args[0]);
            diagonal((0..nv).filter(|x| !defined.contains(x)))
        }
        OpSymbol::Fixset => diagonal(
            args[0]
                .iter()
                .filter(|&&(x, y)| x == y)
                .map(|&(x, _)| x)
                .collect::<Vec<_>>(),
        ),
        OpSymbol::MaxIter => {
            let f = args[0];
            let stop = firsts(f);
            let mut out = Vec::new();
            let mut power = diagonal(0..nv);
            for _ in 0..=nv {
                out.extend(power.iter().filter(|&&(_, y)| !stop.contains(&y)));
                power = compose_rel(&power, f);
            }
            normalize(out)
        }
        OpSymbol::Opposite => normalize(unique_preimages(args[0])),
        OpSymbol::Unipoint => diagonal(unique_preimages(args[0]).into_iter().map(|(y, _)| y)),
    }
}

/// Builds the network induced by a representation: each edge is labelled by
/// the meet of all elements holding on it.
pub fn from_concrete(alg: &FiniteAlgebra, rep: &Representation) -> Result<Network> {
    if rep.len() != alg.n() {
        return Err(Error::MalformedInput(format!(
            "{} functions for a {}-element carrier",
            rep.len(),
            alg.n()
        )));
    }
    let nb = rep.base.len();
    let mut edges = BTreeMap::new();
    for x in 0..nb {
        for y in 0..nb {
            let holding: Vec<Elem> = alg
                .elems()
                .filter(|&b| rep.theta(b).contains((x, y)))
                .collect();
            let Some(&first) = holding.first() else {
                continue;
            };
            let label = holding.iter().skip(1).fold(first, |acc, &b| alg.meet(acc, b));
            if !rep.theta(label).contains((x, y)) {
                return Err(Error::NotARepresentation(format!(
                    "the meet `{}` of the elements holding on ({}, {}) does not hold there",
                    alg.name(label),
                    rep.base.name(x),
                    rep.base.name(y)
                )));
            }
            edges.insert((x, y), label);
        }
    }
    for x in 0..nb {
        if !edges.contains_key(&(x, x)) {
            return Err(Error::NotARepresentation(format!(
                "point `{}` carries no reflexive edge",
                rep.base.name(x)
            )));
        }
    }
    Network::new(rep.base.names().to_vec(), edges, alg.n())
}

/// Reads a representation back off a network: element a is assigned the
/// edges on which it holds. Fails if some element does not hold
/// functionally.
pub fn representation_from_network(net: &Network, alg: &FiniteAlgebra) -> Result<Representation> {
    let thetas = net.theta_all(alg);
    let functions = thetas
        .iter()
        .enumerate()
        .map(|(a, pairs)| {
            PartialFunction::from_pairs(pairs.iter().copied()).map_err(|_| {
                Error::NotARepresentation(format!(
                    "element `{}` does not hold functionally",
                    alg.name(a)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation {
        base: Base::new(net.vertex_names().to_vec())?,
        functions,
    })
}

/// Builds the induced network of a representation and checks it.
pub fn verify_representation(alg: &FiniteAlgebra, rep: &Representation) -> Result<Verdict> {
    let net = from_concrete(alg, rep)?;
    Ok(is_representation(&net, alg))
}

/// The label-matching map between one-step futures: y ↦ y′ exactly when
/// the anchors see y and y′ through equal labels. Returns the map only if
/// it is well defined and preserves every edge label.
pub fn canonical_anchored_map(
    n1: &Network,
    x1: usize,
    n2: &Network,
    x2: usize,
) -> Option<BTreeMap<usize, usize>> {
    let f1 = n1.future_vertices(&[x1]);
    let f2 = n2.future_vertices(&[x2]);
    if f1.len() != f2.len() {
        return None;
    }
    let mut map = BTreeMap::new();
    for &y in &f1 {
        let l = n1.label(x1, y).unwrap();
        let mut targets = f2.iter().filter(|&&y2| n2.label(x2, y2) == Some(l));
        let target = targets.next()?;
        if targets.next().is_some() {
            return None;
        }
        map.insert(y, *target);
    }
    let distinct: BTreeSet<usize> = map.values().copied().collect();
    if distinct.len() != f1.len() {
        return None;
    }
    for &u in &f1 {
        for &v in &f1 {
            if n1.label(u, v) != n2.label(map[&u], map[&v]) {
                return None;
            }
        }
    }
    Some(map)
}

/// Searches for a label-preserving isomorphism between the one-step futures
/// of the two anchors that sends one anchor to the other. The canonical
/// label-matching map is tried first; backtracking over degree-compatible
/// assignments handles the rest.
pub fn find_isomorphism(
    n1: &Network,
    x1: usize,
    n2: &Network,
    x2: usize,
) -> Option<BTreeMap<usize, usize>> {
    if let Some(map) = canonical_anchored_map(n1, x1, n2, x2) {
        return Some(map);
    }
    let f1 = n1.future_vertices(&[x1]);
    let f2 = n2.future_vertices(&[x2]);
    if f1.len() != f2.len() || !f1.contains(&x1) || !f2.contains(&x2) {
        return None;
    }
    let degrees = |net: &Network, within: &[usize], v: usize| {
        let out = within.iter().filter(|&&w| net.label(v, w).is_some()).count();
        let inn = within.iter().filter(|&&w| net.label(w, v).is_some()).count();
        (out, inn)
    };
    let mut order: Vec<usize> = f1.iter().copied().filter(|&v| v != x1).collect();
    order.sort_by_key(|&v| (n1.reflexive_label(v), degrees(n1, &f1, v)));
    order.insert(0, x1);

    fn extend(
        n1: &Network,
        n2: &Network,
        f2: &[usize],
        order: &[usize],
        depth: usize,
        map: &mut BTreeMap<usize, usize>,
        used: &mut BTreeSet<usize>,
        forced: &BTreeMap<usize, usize>,
        degrees1: &BTreeMap<usize, (usize, usize)>,
        degrees2: &BTreeMap<usize, (usize, usize)>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        let candidates: Vec<usize> = match forced.get(&v) {
            Some(&w) => vec![w],
            None => f2.iter().copied().filter(|w| !used.contains(w)).collect(),
        };
        for w in candidates {
            if used.contains(&w)
                || n1.reflexive_label(v) != n2.reflexive_label(w)
                || degrees1[&v] != degrees2[&w]
            {
                continue;
            }
            let consistent = map.iter().all(|(&u, &u2)| {
                n1.label(u, v) == n2.label(u2, w) && n1.label(v, u) == n2.label(w, u2)
            });
            if !consistent {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            if extend(
                n1, n2, f2, order, depth + 1, map, used, forced, degrees1, degrees2,
            ) {
                return true;
            }
            map.remove(&v);
            used.remove(&w);
        }
        false
    }

    let degrees1: BTreeMap<usize, (usize, usize)> =
        f1.iter().map(|&v| (v, degrees(n1, &f1, v))).collect();
    let degrees2: BTreeMap<usize, (usize, usize)> =
        f2.iter().map(|&v| (v, degrees(n2, &f2, v))).collect();
    let forced: BTreeMap<usize, usize> = [(x1, x2)].into_iter().collect();
    let mut map = BTreeMap::new();
    let mut used = BTreeSet::new();
    extend(
        n1, n2, &f2, &order, 0, &mut map, &mut used, &forced, &degrees1, &degrees2,
    )
    .then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Signature, Tables};
    use crate::pfun::ConcreteAlgebra;

    fn pf(pairs: &[(usize, usize)]) -> PartialFunction {
        PartialFunction::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn sig_dr() -> Signature {
        Signature::new([OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Dom, OpSymbol::Ran]).unwrap()
    }

    fn net(n: usize, extra: &[(usize, usize, Elem)], n_labels: usize) -> Network {
        let mut edges: BTreeMap<(usize, usize), Elem> =
            (0..n).map(|x| ((x, x), 0)).collect();
        for &(x, y, l) in extra {
            edges.insert((x, y), l);
        }
        Network::new((0..n).map(|i| format!("v{i}")).collect(), edges, n_labels)
            .unwrap()
    }

    fn point_fixer() -> (FiniteAlgebra, Representation) {
        let alg = ConcreteAlgebra::from_generators(
            sig_dr(),
            Base::numbered(3),
            &[pf(&[(1, 0), (2, 2)])],
            100,
        )
        .unwrap();
        (alg.abstract_algebra().unwrap(), alg.representation())
    }

    #[test]
    fn missing_reflexive_edge_rejected() {
        let edges: BTreeMap<(usize, usize), Elem> = [((0, 0), 0)].into_iter().collect();
        let err = Network::new(vec!["a".into(), "b".into()], edges, 1).unwrap_err();
        assert!(err.to_string().contains("reflexive"));
    }

    #[test]
    fn star_futures() {
        let star = net(3, &[(0, 1, 0), (0, 2, 0)], 1);
        assert_eq!(star.future_vertices(&[0]), vec![0, 1, 2]);
        assert_eq!(star.future_vertices(&[1]), vec![1]);
        assert_eq!(star.future(&[]).n_vertices(), 0);
        assert_eq!(star.present(0), vec![0]);
    }

    #[test]
    fn present_of_a_two_cycle_is_both_vertices() {
        let cyc = net(2, &[(0, 1, 0), (1, 0, 0)], 1);
        assert_eq!(cyc.present(0), vec![0, 1]);
    }

    #[test]
    fn natural_network_of_a_closure_passes() {
        let (abs, rep) = point_fixer();
        let network = from_concrete(&abs, &rep).unwrap();
        assert_eq!(network.n_vertices(), 3);
        let verdict = is_representation(&network, &abs);
        assert!(verdict.pass(), "failures: {:?}", verdict.failures);

        let fi = 0;
        assert_eq!(
            network.holds(&abs, fi),
            vec![(1, 0), (2, 2)],
            "f holds exactly on its own pairs"
        );
        let round_trip = representation_from_network(&network, &abs).unwrap();
        assert_eq!(round_trip.functions, rep.functions);
    }

    #[test]
    fn reflexive_vertex_with_nonidempotent_label_fails_compose() {
        let (abs, _) = point_fixer();
        let single = Network::new(
            vec!["x".into()],
            [((0, 0), 0)].into_iter().collect(),
            abs.n(),
        )
        .unwrap();
        let verdict = is_representation(&single, &abs);
        assert!(!verdict.pass());
        assert!(
            verdict.failures.iter().any(|f| matches!(
                f,
                Failure::OpIncorrect { sym: OpSymbol::Compose, .. }
            )),
            "f∘f = u must be violated on a single f-labelled vertex: {:?}",
            verdict.failures
        );
    }

    #[test]
    fn two_edges_same_source_reported_not_functional() {
        let (abs, _) = point_fixer();
        let bad = net(3, &[(0, 1, 0), (0, 2, 0)], abs.n());
        let verdict = is_representation(&bad, &abs);
        assert!(verdict
            .failures
            .iter()
            .any(|f| matches!(f, Failure::NotFunctional { vertex: 0, .. })));
    }

    #[test]
    fn meet_incompatible_labelling_rejected() {
        let sig = sig_dr();
        let alg = FiniteAlgebra::new(
            sig,
            vec!["c".into(), "a".into(), "b".into()],
            Tables {
                compose: Some(vec![vec![0; 3]; 3]),
                meet: Some(vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]),
                dom: Some(vec![0, 1, 2]),
                ran: Some(vec![0, 1, 2]),
                ..Tables::default()
            },
        )
        .unwrap();
        let rep = Representation {
            base: Base::numbered(1),
            functions: vec![PartialFunction::empty(), pf(&[(0, 0)]), pf(&[(0, 0)])],
        };
        let err = from_concrete(&alg, &rep).unwrap_err();
        assert!(matches!(err, Error::NotARepresentation(_)));
        assert!(err.to_string().contains("meet"));
    }

    #[test]
    fn uncovered_point_has_no_reflexive_edge() {
        let (abs, rep) = point_fixer();
        let padded = Representation {
            base: Base::numbered(4),
            functions: rep.functions.clone(),
        };
        let err = from_concrete(&abs, &padded).unwrap_err();
        assert!(err.to_string().contains("p3"));
    }

    #[test]
    fn canonical_map_on_identical_networks_is_identity() {
        let (abs, rep) = point_fixer();
        let network = from_concrete(&abs, &rep).unwrap();
        for x in 0..network.n_vertices() {
            let map = canonical_anchored_map(&network, x, &network, x).unwrap();
            assert!(map.iter().all(|(a, b)| a == b));
        }
    }

    #[test]
    fn fallback_isomorphism_handles_repeated_labels() {
        let a = net(3, &[(0, 1, 0), (0, 2, 0)], 2);
        let b = net(3, &[(0, 1, 0), (0, 2, 0)], 2);
        assert!(canonical_anchored_map(&a, 0, &b, 0).is_none());
        let map = find_isomorphism(&a, 0, &b, 0).unwrap();
        assert_eq!(map[&0], 0);

        let mut edges: BTreeMap<(usize, usize), Elem> =
            [(0, 0), (1, 1), (2, 2)].map(|(x, y)| ((x, y), 0)).into_iter().collect();
        edges.insert((2, 2), 1);
        edges.insert((0, 1), 0);
        edges.insert((0, 2), 0);
        let c = Network::new(vec!["u0".into(), "u1".into(), "u2".into()], edges, 2).unwrap();
        assert!(
            find_isomorphism(&a, 0, &c, 0).is_none(),
            "differing reflexive labels admit no isomorphism"
        );
    }

    #[test]
    fn rel_eval_matches_function_eval_on_functional_inputs() {
        let fns = crate::pfun::all_partial_functions(3);
        for f in &fns {
            for sym in [
                OpSymbol::Dom,
                OpSymbol::Ran,
                OpSymbol::Antidom,
                OpSymbol::Fixset,
                OpSymbol::MaxIter,
                OpSymbol::Opposite,
                OpSymbol::Unipoint,
            ] {
                assert_eq!(
                    rel_eval(sym, &[f.pairs()], 3),
                    pfun::eval_op(sym, &[f], 3).pairs().to_vec(),
                    "{sym} disagrees on {f:?}"
                );
            }
        }
        for f in fns.iter().take(16) {
            for g in fns.iter().rev().take(16) {
                for sym in [OpSymbol::Compose, OpSymbol::Meet, OpSymbol::PrefUnion] {
                    assert_eq!(
                        rel_eval(sym, &[f.pairs(), g.pairs()], 3),
                        pfun::eval_op(sym, &[f, g], 3).pairs().to_vec(),
                        "{sym} disagrees on {f:?}, {g:?}"
                    );
                }
            }
        }
    }
}
