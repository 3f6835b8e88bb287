//! Partial functions on a finite base, the set-theoretic operations on
//! them, closure of generator sets, and abstraction to operation tables.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::{Elem, FiniteAlgebra, OpSymbol, Signature, Tables};
use crate::{Error, Result};

/// An ordered list of named base points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Base {
    points: Vec<String>,
}

impl Base {
    pub fn new(points: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::MalformedInput(format!(
                    "duplicate base point name `{p}`"
                )));
            }
        }
        Ok(Base { points })
    }

    /// A base named `p0 .. p{n-1}`.
    pub fn numbered(n: usize) -> Self {
        Base {
            points: (0..n).map(|i| format!("p{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }
}

/// A partial function as a sorted, functional list of (input, output)
/// point pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialFunction {
    pairs: Vec<(usize, usize)>,
}

impl PartialFunction {
    /// Builds from arbitrary pairs, rejecting two outputs for one input.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::MalformedInput(format!(
                    "not functional: point {} maps to both {} and {}",
                    w[0].0, w[0].1, w[1].1
                )));
            }
        }
        Ok(PartialFunction { pairs })
    }

    fn from_known_functional(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        debug_assert!(pairs.windows(2).all(|w| w[0].0 != w[1].0));
        PartialFunction { pairs }
    }

    pub fn empty() -> Self {
        PartialFunction { pairs: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |&(a, _)| a)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.apply(pair.0) == Some(pair.1)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|&(x, _)| x)
    }

    pub fn range(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(_, y)| y).collect()
    }

    /// Largest point index mentioned, plus one.
    pub fn min_base(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(x, y)| x.max(y) + 1)
            .max()
            .unwrap_or(0)
    }

    /// The identity restricted to the given points.
    pub fn diagonal(points: impl IntoIterator<Item = usize>) -> Self {
        PartialFunction::from_known_functional(points.into_iter().map(|x| (x, x)).collect())
    }
}

/// The identity on an n-point base.
pub fn identity(n: usize) -> PartialFunction {
    PartialFunction::diagonal(0..n)
}

/// Apply f, then g.
pub fn compose(f: &PartialFunction, g: &PartialFunction) -> PartialFunction {
    PartialFunction::from_known_functional(
        f.pairs()
            .iter()
            .filter_map(|&(x, y)| g.apply(y).map(|z| (x, z)))
            .collect(),
    )
}

/// Intersection of the two pair sets.
pub fn meet(f: &PartialFunction, g: &PartialFunction) -> PartialFunction {
    PartialFunction::from_known_functional(
        f.pairs()
            .iter()
            .copied()
            .filter(|&p| g.contains(p))
            .collect(),
    )
}

/// Diagonal of the points where f is defined.
pub fn dom(f: &PartialFunction) -> PartialFunction {
    PartialFunction::diagonal(f.domain())
}

/// Diagonal of the points f maps onto.
pub fn ran(f: &PartialFunction) -> PartialFunction {
    PartialFunction::diagonal(f.range())
}

/// Diagonal of the points where f is not defined.
pub fn antidom(f: &PartialFunction, base_size: usize) -> PartialFunction {
    PartialFunction::diagonal((0..base_size).filter(|&x| f.apply(x).is_none()))
}

/// Diagonal of the fixed points of f.
pub fn fixset(f: &PartialFunction) -> PartialFunction {
    PartialFunction::diagonal(f.pairs().iter().filter(|&&(x, y)| x == y).map(|&(x, _)| x))
}

/// f where f is defined, g elsewhere.
pub fn prefunion(f: &PartialFunction, g: &PartialFunction) -> PartialFunction {
    let mut pairs = f.pairs().to_vec();
    pairs.extend(
        g.pairs()
            .iter()
            .copied()
            .filter(|&(x, _)| f.apply(x).is_none()),
    );
    PartialFunction::from_known_functional(pairs)
}

/// Iterate f as long as possible: the union of fⁿ restricted to landing
/// outside f's domain, for 0 ≤ n ≤ base_size. Points on f-cycles never
/// land outside the domain and so are excluded.
pub fn maxiter(f: &PartialFunction, base_size: usize) -> PartialFunction {
    let mut out = Vec::new();
    let mut power = identity(base_size);
    for _ in 0..=base_size {
        out.extend(
            power
                .pairs()
                .iter()
                .copied()
                .filter(|&(_, y)| f.apply(y).is_none()),
        );
        power = compose(&power, f);
    }
    PartialFunction::from_known_functional(out)
}

/// The functional part of the converse: (y, x) only when x is the unique
/// f-preimage of y.
pub fn opposite(f: &PartialFunction) -> PartialFunction {
    PartialFunction::from_known_functional(unique_preimages(f).collect())
}

/// Diagonal of the range points with exactly one preimage.
pub fn unipoint(f: &PartialFunction) -> PartialFunction {
    PartialFunction::diagonal(unique_preimages(f).map(|(y, _)| y))
}

fn unique_preimages(f: &PartialFunction) -> impl Iterator<Item = (usize, usize)> + '_ {
    let mut count: HashMap<usize, (usize, usize)> = HashMap::new();
    for &(x, y) in f.pairs() {
        count.entry(y).and_modify(|e| e.0 += 1).or_insert((1, x));
    }
    let mut found: Vec<(usize, usize)> = count
        .into_iter()
        .filter(|&(_, (c, _))| c == 1)
        .map(|(y, (_, x))| (y, x))
        .collect();
    found.sort_unstable();
    found.into_iter()
}

/// Evaluates one symbol on already-checked arguments.
///
/// Panics if the argument count does not match the symbol's arity.
pub fn eval_op(sym: OpSymbol, args: &[&PartialFunction], base_size: usize) -> PartialFunction {
    assert_eq!(args.len(), sym.arity(), "arity mismatch for {sym}");
    match sym {
        OpSymbol::Zero => PartialFunction::empty(),
        OpSymbol::Ident => identity(base_size),
        OpSymbol::Compose => compose(args[0], args[1]),
        OpSymbol::Meet => meet(args[0], args[1]),
        OpSymbol::PrefUnion => prefunion(args[0], args[1]),
        OpSymbol::Dom => dom(args[0]),
        OpSymbol::Ran => ran(args[0]),
        OpSymbol::Antidom => antidom(args[0], base_size),
        OpSymbol::Fixset => fixset(args[0]),
        OpSymbol::MaxIter => maxiter(args[0], base_size),
        OpSymbol::Opposite => opposite(args[0]),
        OpSymbol::Unipoint => unipoint(args[0]),
    }
}

/// Every partial function on an n-point base, in a fixed enumeration order.
pub fn all_partial_functions(n: usize) -> Vec<PartialFunction> {
    let mut out = vec![PartialFunction::empty()];
    for x in 0..n {
        let mut next = Vec::with_capacity(out.len() * (n + 1));
        for f in &out {
            next.push(f.clone());
            for y in 0..n {
                let mut pairs = f.pairs().to_vec();
                pairs.push((x, y));
                next.push(PartialFunction::from_known_functional(pairs));
            }
        }
        out = next;
    }
    out
}

/// Closes a generator set under the signature's operations. Constants come
/// first, then generators, then new results in discovery order. Errors when
/// the closure would exceed `cap` functions.
pub fn close_under(
    sig: &Signature,
    generators: &[PartialFunction],
    base_size: usize,
    cap: usize,
) -> Result<Vec<PartialFunction>> {
    let mut found: Vec<PartialFunction> = Vec::new();
    let mut index: HashMap<PartialFunction, usize> = HashMap::new();
    let push = |f: PartialFunction,
                found: &mut Vec<PartialFunction>,
                index: &mut HashMap<PartialFunction, usize>|
     -> Result<()> {
        if !index.contains_key(&f) {
            if found.len() >= cap {
                return Err(Error::Capacity(format!(
                    "closure exceeded the cap of {cap} functions"
                )));
            }
            index.insert(f.clone(), found.len());
            found.push(f);
        }
        Ok(())
    };

    for sym in sig.nullary_symbols() {
        push(eval_op(sym, &[], base_size), &mut found, &mut index)?;
    }
    for g in generators {
        if g.min_base() > base_size {
            return Err(Error::MalformedInput(format!(
                "generator mentions point {} outside the {base_size}-point base",
                g.min_base() - 1
            )));
        }
        push(g.clone(), &mut found, &mut index)?;
    }

    loop {
        let snapshot = found.len();
        for sym in sig.unary_symbols() {
            for i in 0..snapshot {
                let r = eval_op(sym, &[&found[i]], base_size);
                push(r, &mut found, &mut index)?;
            }
        }
        for sym in sig.binary_symbols() {
            for i in 0..snapshot {
                for j in 0..snapshot {
                    let r = eval_op(sym, &[&found[i], &found[j]], base_size);
                    push(r, &mut found, &mut index)?;
                }
            }
        }
        if found.len() == snapshot {
            return Ok(found);
        }
    }
}

/// A finite set of named partial functions on a shared base, closed under
/// a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteAlgebra {
    sig: Signature,
    base: Base,
    names: Vec<String>,
    functions: Vec<PartialFunction>,
}

impl ConcreteAlgebra {
    /// Builds and fully checks a concrete algebra: distinct functions, pairs
    /// within the base, base covered by domains and ranges (unless declared
    /// larger), and one closure pass over every operation.
    pub fn new(
        sig: Signature,
        base: Base,
        names: Vec<String>,
        functions: Vec<PartialFunction>,
        allow_larger_base: bool,
    ) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::MalformedInput("no functions given".into()));
        }
        if names.len() != functions.len() {
            return Err(Error::MalformedInput(format!(
                "{} names for {} functions",
                names.len(),
                functions.len()
            )));
        }
        let mut seen_names = BTreeSet::new();
        for name in &names {
            if !seen_names.insert(name.as_str()) {
                return Err(Error::MalformedInput(format!(
                    "duplicate function name `{name}`"
                )));
            }
        }
        let mut seen_fns: HashMap<&PartialFunction, &str> = HashMap::new();
        for (name, f) in names.iter().zip(&functions) {
            if let Some(prev) = seen_fns.insert(f, name) {
                return Err(Error::MalformedInput(format!(
                    "`{prev}` and `{name}` are the same function"
                )));
            }
        }
        let n = base.len();
        let mut touched: BTreeSet<usize> = BTreeSet::new();
        for (name, f) in names.iter().zip(&functions) {
            for &(x, y) in f.pairs() {
                if x >= n || y >= n {
                    return Err(Error::MalformedInput(format!(
                        "`{name}` has pair ({x}, {y}) outside the {n}-point base"
                    )));
                }
                touched.insert(x);
                touched.insert(y);
            }
        }
        if !allow_larger_base && touched.len() < n {
            let unused = (0..n).find(|p| !touched.contains(p)).unwrap();
            return Err(Error::MalformedInput(format!(
                "base point `{}` is in no domain or range; shrink the base or declare it larger",
                base.name(unused)
            )));
        }

        let algebra = ConcreteAlgebra {
            sig,
            base,
            names,
            functions,
        };
        algebra.check_closed()?;
        Ok(algebra)
    }

    /// Closes generators under the signature and packages the result, with
    /// functions named `t0, t1, ...` in closure order. The base shrinks to
    /// the points actually touched when no operation depends on the full
    /// base.
    pub fn from_generators(
        sig: Signature,
        base: Base,
        generators: &[PartialFunction],
        cap: usize,
    ) -> Result<Self> {
        let mut closed = close_under(&sig, generators, base.len(), cap)?;
        if closed.is_empty() {
            return Err(Error::MalformedInput(
                "closure is empty: give a generator or a signature with constants".into(),
            ));
        }
        let base_dependent = [OpSymbol::Antidom, OpSymbol::Ident, OpSymbol::MaxIter]
            .into_iter()
            .any(|s| sig.has(s));
        let mut base = base;
        if !base_dependent {
            let mut touched: BTreeSet<usize> = BTreeSet::new();
            for f in &closed {
                for &(x, y) in f.pairs() {
                    touched.insert(x);
                    touched.insert(y);
                }
            }
            if touched.len() < base.len() {
                let renumber: HashMap<usize, usize> = touched
                    .iter()
                    .enumerate()
                    .map(|(new, &old)| (old, new))
                    .collect();
                closed = closed
                    .into_iter()
                    .map(|f| {
                        PartialFunction::from_known_functional(
                            f.pairs()
                                .iter()
                                .map(|&(x, y)| (renumber[&x], renumber[&y]))
                                .collect(),
                        )
                    })
                    .collect();
                base = Base::new(
                    touched
                        .iter()
                        .map(|&old| base.name(old).to_string())
                        .collect(),
                )
                .unwrap();
            }
        }
        let names = (0..closed.len()).map(|i| format!("t{i}")).collect();
        ConcreteAlgebra::new(sig, base, names, closed, true)
    }

    fn check_closed(&self) -> Result<()> {
        let n = self.base.len();
        let here: HashMap<&PartialFunction, usize> = self
            .functions
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let missing = |sym: OpSymbol, args: &[usize]| {
            let shown: Vec<&str> = args.iter().map(|&i| self.names[i].as_str()).collect();
            Error::ClosureViolation(format!(
                "`{sym}` of ({}) is not in the function set",
                shown.join(", ")
            ))
        };
        for sym in self.sig.nullary_symbols() {
            if !here.contains_key(&eval_op(sym, &[], n)) {
                return Err(missing(sym, &[]));
            }
        }
        for sym in self.sig.unary_symbols() {
            for (i, f) in self.functions.iter().enumerate() {
                if !here.contains_key(&eval_op(sym, &[f], n)) {
                    return Err(missing(sym, &[i]));
                }
            }
        }
        for sym in self.sig.binary_symbols() {
            for (i, f) in self.functions.iter().enumerate() {
                for (j, g) in self.functions.iter().enumerate() {
                    if !here.contains_key(&eval_op(sym, &[f, g], n)) {
                        return Err(missing(sym, &[i, j]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn functions(&self) -> &[PartialFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Reads the operation tables off the function set.
    pub fn abstract_algebra(&self) -> Result<FiniteAlgebra> {
        let n = self.base.len();
        let here: HashMap<&PartialFunction, usize> = self
            .functions
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let look = |f: PartialFunction, sym: OpSymbol| -> Result<Elem> {
            here.get(&f).copied().ok_or_else(|| {
                Error::ClosureViolation(format!("`{sym}` result is not in the function set"))
            })
        };
        let mut tables = Tables::default();
        for sym in self.sig.symbols() {
            match sym.arity() {
                0 => {
                    let v = look(eval_op(sym, &[], n), sym)?;
                    match sym {
                        OpSymbol::Zero => tables.zero = Some(v),
                        OpSymbol::Ident => tables.ident = Some(v),
                        _ => unreachable!(),
                    }
                }
                1 => {
                    let col = self
                        .functions
                        .iter()
                        .map(|f| look(eval_op(sym, &[f], n), sym))
                        .collect::<Result<Vec<Elem>>>()?;
                    match sym {
                        OpSymbol::Dom => tables.dom = Some(col),
                        OpSymbol::Ran => tables.ran = Some(col),
                        OpSymbol::Antidom => tables.antidom = Some(col),
                        OpSymbol::Fixset => tables.fixset = Some(col),
                        OpSymbol::MaxIter => tables.maxiter = Some(col),
                        OpSymbol::Opposite => tables.opposite = Some(col),
                        OpSymbol::Unipoint => tables.unipoint = Some(col),
                        _ => unreachable!(),
                    }
                }
                _ => {
                    let grid = self
                        .functions
                        .iter()
                        .map(|f| {
                            self.functions
                                .iter()
                                .map(|g| look(eval_op(sym, &[f, g], n), sym))
                                .collect::<Result<Vec<Elem>>>()
                        })
                        .collect::<Result<Vec<Vec<Elem>>>>()?;
                    match sym {
                        OpSymbol::Compose => tables.compose = Some(grid),
                        OpSymbol::Meet => tables.meet = Some(grid),
                        OpSymbol::PrefUnion => tables.prefunion = Some(grid),
                        _ => unreachable!(),
                    }
                }
            }
        }
        FiniteAlgebra::new(self.sig.clone(), self.names.clone(), tables)
    }

    /// The identity assignment element i ↦ functions[i], as a representation
    /// of the abstraction.
    pub fn representation(&self) -> Representation {
        Representation {
            base: self.base.clone(),
            functions: self.functions.clone(),
        }
    }
}

/// An assignment of one partial function per carrier element of some
/// algebra, by index, on a shared base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub base: Base,
    pub functions: Vec<PartialFunction>,
}

impl Representation {
    pub fn theta(&self, e: Elem) -> &PartialFunction {
        &self.functions[e]
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}
