//! Abstract finite algebras: signatures, operation tables, the induced
//! order, domain elements, atoms, and a screen of laws every representable
//! algebra must satisfy.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index of an element in an algebra's carrier.
pub type Elem = usize;

/// Operation symbols a signature may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpSymbol {
    Compose,
    Meet,
    Dom,
    Ran,
    Zero,
    Ident,
    Antidom,
    Fixset,
    PrefUnion,
    MaxIter,
    Opposite,
    Unipoint,
}

impl OpSymbol {
    /// Every symbol, in canonical order.
    pub const ALL: [OpSymbol; 12] = [
        OpSymbol::Compose,
        OpSymbol::Meet,
        OpSymbol::Dom,
        OpSymbol::Ran,
        OpSymbol::Zero,
        OpSymbol::Ident,
        OpSymbol::Antidom,
        OpSymbol::Fixset,
        OpSymbol::PrefUnion,
        OpSymbol::MaxIter,
        OpSymbol::Opposite,
        OpSymbol::Unipoint,
    ];

    /// Number of arguments the symbol takes.
    pub fn arity(self) -> usize {
        match self {
            OpSymbol::Zero | OpSymbol::Ident => 0,
            OpSymbol::Compose | OpSymbol::Meet | OpSymbol::PrefUnion => 2,
            _ => 1,
        }
    }

    /// Lower-case name used in files and messages.
    pub fn name(self) -> &'static str {
        match self {
            OpSymbol::Compose => "compose",
            OpSymbol::Meet => "meet",
            OpSymbol::Dom => "dom",
            OpSymbol::Ran => "ran",
            OpSymbol::Zero => "zero",
            OpSymbol::Ident => "ident",
            OpSymbol::Antidom => "antidom",
            OpSymbol::Fixset => "fixset",
            OpSymbol::PrefUnion => "prefunion",
            OpSymbol::MaxIter => "maxiter",
            OpSymbol::Opposite => "opposite",
            OpSymbol::Unipoint => "unipoint",
        }
    }
}

impl fmt::Display for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OpSymbol::ALL
            .into_iter()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| Error::MalformedInput(format!("unknown operation symbol `{s}`")))
    }
}

/// A set of operation symbols. Always contains compose, meet, and ran, plus
/// at least one of dom and antidom; unipoint is admitted only through
/// [`Signature::allowing_unipoint`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeSet<OpSymbol>,
}

impl Signature {
    /// Builds a signature, rejecting unipoint.
    pub fn new(symbols: impl IntoIterator<Item = OpSymbol>) -> Result<Self> {
        let symbols: BTreeSet<OpSymbol> = symbols.into_iter().collect();
        if symbols.contains(&OpSymbol::Unipoint) {
            return Err(Error::MalformedInput(
                "unipoint must be explicitly enabled (use Signature::allowing_unipoint)".into(),
            ));
        }
        Self::check_required(symbols)
    }

    /// Builds a signature that may contain unipoint.
    pub fn allowing_unipoint(symbols: impl IntoIterator<Item = OpSymbol>) -> Result<Self> {
        Self::check_required(symbols.into_iter().collect())
    }

    fn check_required(symbols: BTreeSet<OpSymbol>) -> Result<Self> {
        for required in [OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Ran] {
            if !symbols.contains(&required) {
                return Err(Error::MalformedInput(format!(
                    "signature must contain `{required}`"
                )));
            }
        }
        if !symbols.contains(&OpSymbol::Dom) && !symbols.contains(&OpSymbol::Antidom) {
            return Err(Error::MalformedInput(
                "signature must contain `dom` or `antidom`".into(),
            ));
        }
        Ok(Signature { symbols })
    }

    pub fn has(&self, sym: OpSymbol) -> bool {
        self.symbols.contains(&sym)
    }

    /// Symbols in canonical order.
    pub fn symbols(&self) -> impl Iterator<Item = OpSymbol> + '_ {
        OpSymbol::ALL.into_iter().filter(|s| self.has(*s))
    }

    pub fn nullary_symbols(&self) -> Vec<OpSymbol> {
        self.symbols().filter(|s| s.arity() == 0).collect()
    }

    pub fn unary_symbols(&self) -> Vec<OpSymbol> {
        self.symbols().filter(|s| s.arity() == 1).collect()
    }

    pub fn binary_symbols(&self) -> Vec<OpSymbol> {
        self.symbols().filter(|s| s.arity() == 2).collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, sym) in self.symbols().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{sym}")?;
        }
        write!(f, "}}")
    }
}

/// Operation tables over a carrier, one slot per symbol. Binary tables are
/// indexed `[left][right]`, so `compose[a][b]` means "apply a, then b".
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tables {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<Vec<Elem>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<Elem>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefunion: Option<Vec<Vec<Elem>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dom: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ran: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antidom: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixset: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maxiter: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opposite: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unipoint: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<Elem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ident: Option<Elem>,
}

impl Tables {
    pub fn nullary(&self, sym: OpSymbol) -> Option<Elem> {
        match sym {
            OpSymbol::Zero => self.zero,
            OpSymbol::Ident => self.ident,
            _ => None,
        }
    }

    pub fn unary(&self, sym: OpSymbol) -> Option<&[Elem]> {
        let slot = match sym {
            OpSymbol::Dom => &self.dom,
            OpSymbol::Ran => &self.ran,
            OpSymbol::Antidom => &self.antidom,
            OpSymbol::Fixset => &self.fixset,
            OpSymbol::MaxIter => &self.maxiter,
            OpSymbol::Opposite => &self.opposite,
            OpSymbol::Unipoint => &self.unipoint,
            _ => &None,
        };
        slot.as_deref()
    }

    pub fn binary(&self, sym: OpSymbol) -> Option<&Vec<Vec<Elem>>> {
        let slot = match sym {
            OpSymbol::Compose => &self.compose,
            OpSymbol::Meet => &self.meet,
            OpSymbol::PrefUnion => &self.prefunion,
            _ => &None,
        };
        slot.as_ref()
    }

    fn is_present(&self, sym: OpSymbol) -> bool {
        match sym.arity() {
            0 => self.nullary(sym).is_some(),
            1 => self.unary(sym).is_some(),
            _ => self.binary(sym).is_some(),
        }
    }
}

/// A finite algebra: named carrier elements plus one table per signature
/// symbol. Element references are carrier indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    sig: Signature,
    names: Vec<String>,
    tables: Tables,
}

impl FiniteAlgebra {
    /// Builds an algebra, checking that exactly the signature's tables are
    /// present, correctly shaped, and in range.
    pub fn new(sig: Signature, names: Vec<String>, tables: Tables) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::MalformedInput("carrier must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::MalformedInput(format!(
                    "duplicate carrier element name `{name}`"
                )));
            }
        }
        let n = names.len();
        for sym in OpSymbol::ALL {
            match (sig.has(sym), tables.is_present(sym)) {
                (true, false) => {
                    return Err(Error::MalformedInput(format!("missing table for `{sym}`")));
                }
                (false, true) => {
                    return Err(Error::MalformedInput(format!(
                        "table for `{sym}` is not in the signature"
                    )));
                }
                _ => {}
            }
        }
        for sym in sig.symbols() {
            match sym.arity() {
                0 => {
                    let v = tables.nullary(sym).unwrap();
                    if v >= n {
                        return Err(Error::MalformedInput(format!(
                            "tables.{sym} = {v} out of range (carrier size {n})"
                        )));
                    }
                }
                1 => {
                    let col = tables.unary(sym).unwrap();
                    if col.len() != n {
                        return Err(Error::MalformedInput(format!(
                            "tables.{sym} has {} entries, expected {n}",
                            col.len()
                        )));
                    }
                    for (i, &v) in col.iter().enumerate() {
                        if v >= n {
                            return Err(Error::MalformedInput(format!(
                                "tables.{sym}[{i}] = {v} out of range (carrier size {n})"
                            )));
                        }
                    }
                }
                _ => {
                    let grid = tables.binary(sym).unwrap();
                    if grid.len() != n {
                        return Err(Error::MalformedInput(format!(
                            "tables.{sym} has {} rows, expected {n}",
                            grid.len()
                        )));
                    }
                    for (i, row) in grid.iter().enumerate() {
                        if row.len() != n {
                            return Err(Error::MalformedInput(format!(
                                "tables.{sym}[{i}] has {} entries, expected {n}",
                                row.len()
                            )));
                        }
                        for (j, &v) in row.iter().enumerate() {
                            if v >= n {
                                return Err(Error::MalformedInput(format!(
                                    "tables.{sym}[{i}][{j}] = {v} out of range (carrier size {n})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(FiniteAlgebra { sig, names, tables })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    /// Carrier size.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.n()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|x| x == name)
    }

    pub fn compose(&self, a: Elem, b: Elem) -> Elem {
        self.tables.compose.as_ref().unwrap()[a][b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.tables.meet.as_ref().unwrap()[a][b]
    }

    /// Induced order: a is below b when their meet is a.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    pub fn ran_of(&self, a: Elem) -> Elem {
        self.tables.ran.as_ref().unwrap()[a]
    }

    /// Domain, read from the dom table or derived as double antidomain.
    pub fn dom_of(&self, a: Elem) -> Elem {
        match &self.tables.dom {
            Some(col) => col[a],
            None => {
                let anti = self.tables.antidom.as_ref().unwrap();
                anti[anti[a]]
            }
        }
    }

    pub fn antidom_of(&self, a: Elem) -> Option<Elem> {
        self.tables.antidom.as_ref().map(|col| col[a])
    }

    pub fn zero_const(&self) -> Option<Elem> {
        self.tables.zero
    }

    pub fn ident_const(&self) -> Option<Elem> {
        self.tables.ident
    }

    pub fn eval_nullary(&self, sym: OpSymbol) -> Option<Elem> {
        self.tables.nullary(sym)
    }

    pub fn eval_unary(&self, sym: OpSymbol, a: Elem) -> Option<Elem> {
        self.tables.unary(sym).map(|col| col[a])
    }

    pub fn eval_binary(&self, sym: OpSymbol, a: Elem, b: Elem) -> Option<Elem> {
        self.tables.binary(sym).map(|grid| grid[a][b])
    }

    /// An element that is least under meet and absorbing under composition,
    /// if one exists. This is the role a zero constant plays even in
    /// signatures that do not name it.
    pub fn absorbing_zero(&self) -> Option<Elem> {
        self.elems().find(|&z| {
            self.elems()
                .all(|a| self.meet(z, a) == z && self.compose(z, a) == z && self.compose(a, z) == z)
        })
    }

    /// The induced order, as a dense relation.
    pub fn induced_order(&self) -> PartialOrder {
        let n = self.n();
        let leq = (0..n)
            .map(|a| (0..n).map(|b| self.leq(a, b)).collect())
            .collect();
        PartialOrder { n, leq }
    }

    /// Checks the semilattice laws, order antisymmetry, and (when a zero
    /// constant is present) that it is least.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let mut witness = None;
        for a in self.elems() {
            if self.meet(a, a) != a {
                witness = Some(self.name(a).to_string());
                break;
            }
        }
        checks.push(CheckResult::new("meet idempotent", witness));

        let mut witness = None;
        'comm: for a in self.elems() {
            for b in self.elems() {
                if self.meet(a, b) != self.meet(b, a) {
                    witness = Some(format!("({}, {})", self.name(a), self.name(b)));
                    break 'comm;
                }
            }
        }
        checks.push(CheckResult::new("meet commutative", witness));

        let mut witness = None;
        'assoc: for a in self.elems() {
            for b in self.elems() {
                for c in self.elems() {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        witness = Some(format!(
                            "({}, {}, {})",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        checks.push(CheckResult::new("meet associative", witness));

        let mut witness = None;
        'anti: for a in self.elems() {
            for b in self.elems() {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    witness = Some(format!("({}, {})", self.name(a), self.name(b)));
                    break 'anti;
                }
            }
        }
        checks.push(CheckResult::new("induced order antisymmetric", witness));

        if let Some(z) = self.zero_const() {
            let witness = self
                .elems()
                .find(|&a| !self.leq(z, a))
                .map(|a| self.name(a).to_string());
            checks.push(CheckResult::new("zero constant is least", witness));
        }

        ValidationReport { checks }
    }

    /// The set {D(a) : a in carrier}, sorted by index.
    pub fn domain_elements(&self) -> Vec<Elem> {
        let set: BTreeSet<Elem> = self.elems().map(|a| self.dom_of(a)).collect();
        set.into_iter().collect()
    }

    /// Minimal nonzero elements. Without a least element (possible only for
    /// broken meet tables) all minimal elements are returned and
    /// `least` is `None` to flag the absence.
    pub fn atoms(&self) -> Atoms {
        let order = self.induced_order();
        let least = order.least();
        let atoms = self
            .elems()
            .filter(|&a| {
                if Some(a) == least {
                    return false;
                }
                self.elems()
                    .all(|b| b == a || Some(b) == least || !order.lt(b, a))
            })
            .collect();
        Atoms { atoms, least }
    }

    /// Screens laws that hold in every algebra of partial functions.
    /// A failure certifies that no representation exists; passing proves
    /// nothing.
    pub fn necessary_laws(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let mut witness = None;
        'l1: for a in self.elems() {
            for b in self.elems() {
                if a != b && self.leq(b, a) && self.leq(self.dom_of(a), self.dom_of(b)) {
                    witness = Some(format!("({}, {})", self.name(a), self.name(b)));
                    break 'l1;
                }
            }
        }
        checks.push(CheckResult::new(
            "below with larger domain forces equality",
            witness,
        ));

        let mut witness = None;
        'l2: for a in self.elems() {
            for c in self.elems() {
                if !self.leq(self.dom_of(self.compose(a, c)), self.dom_of(a)) {
                    witness = Some(format!("({}, {})", self.name(a), self.name(c)));
                    break 'l2;
                }
            }
        }
        checks.push(CheckResult::new("composition shrinks domains", witness));

        let witness = self
            .elems()
            .find(|&a| self.leq(a, self.dom_of(a)) && a != self.dom_of(a))
            .map(|a| self.name(a).to_string());
        checks.push(CheckResult::new(
            "elements below their domain are domains",
            witness,
        ));

        let domain_set: BTreeSet<Elem> = self.domain_elements().into_iter().collect();
        let mut witness = None;
        'dmeet: for &a in &domain_set {
            for &b in &domain_set {
                if !domain_set.contains(&self.meet(a, b)) {
                    witness = Some(format!("({}, {})", self.name(a), self.name(b)));
                    break 'dmeet;
                }
            }
        }
        checks.push(CheckResult::new("domain elements meet-closed", witness));

        if self.sig.has(OpSymbol::Antidom) {
            let anti = |a: Elem| self.antidom_of(a).unwrap();
            let z0 = self.compose(anti(0), 0);

            let mut witness = None;
            for a in self.elems() {
                if self.compose(anti(a), a) != z0 {
                    witness = Some(format!(
                        "antidom({})∘{} ≠ antidom({})∘{}",
                        self.name(a),
                        self.name(a),
                        self.name(0),
                        self.name(0)
                    ));
                    break;
                }
            }
            if witness.is_none() {
                witness = self
                    .elems()
                    .find(|&b| !self.leq(z0, b))
                    .map(|b| format!("{} not below {}", self.name(z0), self.name(b)));
            }
            if witness.is_none() {
                if let Some(z) = self.zero_const() {
                    if z != z0 {
                        witness = Some(format!(
                            "constant is {} but zero is {}",
                            self.name(z0),
                            self.name(z)
                        ));
                    }
                }
            }
            checks.push(CheckResult::new(
                "antidomain composed with argument is a least constant",
                witness,
            ));

            if self.tables.dom.is_some() {
                let witness = self
                    .elems()
                    .find(|&a| self.dom_of(a) != anti(anti(a)))
                    .map(|a| self.name(a).to_string());
                checks.push(CheckResult::new(
                    "dom agrees with double antidomain",
                    witness,
                ));
            }

            let mut witness = None;
            'l5: for a in self.elems() {
                for b in self.elems() {
                    if !self.leq(b, a) {
                        continue;
                    }
                    let rest = self.compose(anti(b), a);
                    if self.meet(b, rest) != z0 {
                        witness = Some(format!(
                            "meet({}, antidom({})∘{}) ≠ {}",
                            self.name(b),
                            self.name(b),
                            self.name(a),
                            self.name(z0)
                        ));
                        break 'l5;
                    }
                    if !self.leq(rest, a) {
                        witness = Some(format!(
                            "antidom({})∘{} not below {}",
                            self.name(b),
                            self.name(a),
                            self.name(a)
                        ));
                        break 'l5;
                    }
                    for u in self.elems() {
                        if self.leq(b, u) && self.leq(rest, u) && !self.leq(a, u) {
                            witness = Some(format!(
                                "{} and antidom({})∘{} below {}, but {} is not",
                                self.name(b),
                                self.name(b),
                                self.name(a),
                                self.name(u),
                                self.name(a)
                            ));
                            break 'l5;
                        }
                    }
                }
            }
            checks.push(CheckResult::new(
                "complement splits elements below",
                witness,
            ));
        }

        ValidationReport { checks }
    }
}

/// The order induced by the meet table.
#[derive(Debug, Clone)]
pub struct PartialOrder {
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl PartialOrder {
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq[a][b]
    }

    /// The element below every other, if any.
    pub fn least(&self) -> Option<Elem> {
        (0..self.n).find(|&z| (0..self.n).all(|a| self.leq[z][a]))
    }

    /// Elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<Elem> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| !self.lt(b, a)))
            .collect()
    }
}

/// Result of one named exhaustive check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, witness: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass: witness.is_none(),
            witness,
        }
    }
}

/// A bundle of check results.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The result for a named check, if it was performed.
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Minimal nonzero elements together with the least element they sit above.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Atoms {
    pub atoms: Vec<Elem>,
    pub least: Option<Elem>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig_dr() -> Signature {
        Signature::new([OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Dom, OpSymbol::Ran]).unwrap()
    }

    fn algebra(names: &[&str], tables: Tables) -> FiniteAlgebra {
        FiniteAlgebra::new(
            sig_dr(),
            names.iter().map(|s| s.to_string()).collect(),
            tables,
        )
        .unwrap()
    }

    fn one_element() -> FiniteAlgebra {
        algebra(
            &["id"],
            Tables {
                compose: Some(vec![vec![0]]),
                meet: Some(vec![vec![0]]),
                dom: Some(vec![0]),
                ran: Some(vec![0]),
                ..Tables::default()
            },
        )
    }

    #[test]
    fn signature_requires_ran() {
        let err = Signature::new([OpSymbol::Compose, OpSymbol::Meet, OpSymbol::Dom]).unwrap_err();
        assert!(
            err.to_string().contains("ran"),
            "expected the missing symbol to be named, got: {err}"
        );
    }

    #[test]
    fn signature_accepts_antidom_in_place_of_dom() {
        Signature::new([
            OpSymbol::Compose,
            OpSymbol::Meet,
            OpSymbol::Antidom,
            OpSymbol::Ran,
        ])
        .unwrap();
    }

    #[test]
    fn signature_rejects_unipoint_unless_enabled() {
        let syms = [
            OpSymbol::Compose,
            OpSymbol::Meet,
            OpSymbol::Dom,
            OpSymbol::Ran,
            OpSymbol::Unipoint,
        ];
        assert!(Signature::new(syms).is_err());
        assert!(Signature::allowing_unipoint(syms).is_ok());
    }

    #[test]
    fn symbol_names_round_trip() {
        for sym in OpSymbol::ALL {
            assert_eq!(sym.name().parse::<OpSymbol>().unwrap(), sym);
        }
    }

    #[test]
    fn one_element_algebra_validates() {
        let a = one_element();
        assert!(a.validate().pass());
        assert!(a.necessary_laws().pass());
        assert!(a.atoms().atoms.is_empty(), "one element means no atoms");
    }

    #[test]
    fn out_of_range_entry_is_positioned() {
        let err = FiniteAlgebra::new(
            sig_dr(),
            vec!["z".into(), "e".into()],
            Tables {
                compose: Some(vec![vec![0, 0], vec![0, 7]]),
                meet: Some(vec![vec![0, 0], vec![0, 1]]),
                dom: Some(vec![0, 1]),
                ran: Some(vec![0, 1]),
                ..Tables::default()
            },
        )
        .unwrap_err();
        assert!(
            err.to_string().contains("compose[1][1] = 7"),
            "expected a positioned message, got: {err}"
        );
    }

    #[test]
    fn missing_and_extra_tables_rejected() {
        let missing = FiniteAlgebra::new(
            sig_dr(),
            vec!["x".into()],
            Tables {
                compose: Some(vec![vec![0]]),
                meet: Some(vec![vec![0]]),
                ran: Some(vec![0]),
                ..Tables::default()
            },
        );
        assert!(missing.is_err());

        let extra = FiniteAlgebra::new(
            sig_dr(),
            vec!["x".into()],
            Tables {
                compose: Some(vec![vec![0]]),
                meet: Some(vec![vec![0]]),
                dom: Some(vec![0]),
                ran: Some(vec![0]),
                zero: Some(0),
                ..Tables::default()
            },
        );
        assert!(extra.is_err());
    }

    #[test]
    fn idempotence_violation_reported_with_witness() {
        let a = algebra(
            &["z", "e"],
            Tables {
                compose: Some(vec![vec![0, 0], vec![0, 1]]),
                meet: Some(vec![vec![0, 0], vec![0, 0]]),
                dom: Some(vec![0, 1]),
                ran: Some(vec![0, 1]),
                ..Tables::default()
            },
        );
        let report = a.validate();
        let check = report.check("meet idempotent").unwrap();
        assert!(!check.pass);
        assert_eq!(check.witness.as_deref(), Some("e"));
    }

    #[test]
    fn element_strictly_below_its_domain_fails_the_screen() {
        let a = algebra(
            &["a", "t"],
            Tables {
                compose: Some(vec![vec![0, 0], vec![0, 1]]),
                meet: Some(vec![vec![0, 0], vec![0, 1]]),
                dom: Some(vec![1, 1]),
                ran: Some(vec![1, 1]),
                ..Tables::default()
            },
        );
        assert!(a.validate().pass());
        let report = a.necessary_laws();
        assert!(!report
            .check("elements below their domain are domains")
            .unwrap()
            .pass);
    }

    #[test]
    fn chain_atoms_and_least() {
        let a = algebra(
            &["z", "mid", "top"],
            Tables {
                compose: Some(vec![vec![0; 3], vec![0, 1, 1], vec![0, 1, 2]]),
                meet: Some(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]),
                dom: Some(vec![0, 1, 2]),
                ran: Some(vec![0, 1, 2]),
                ..Tables::default()
            },
        );
        let atoms = a.atoms();
        assert_eq!(atoms.least, Some(0));
        assert_eq!(atoms.atoms, vec![1], "only `mid` sits directly above z");
    }

    #[test]
    fn broken_meet_table_flags_missing_least() {
        let a = algebra(
            &["a", "b"],
            Tables {
                compose: Some(vec![vec![0, 1], vec![0, 1]]),
                meet: Some(vec![vec![0, 1], vec![0, 1]]),
                dom: Some(vec![0, 1]),
                ran: Some(vec![0, 1]),
                ..Tables::default()
            },
        );
        assert!(!a.validate().pass(), "this meet table is not commutative");
        let atoms = a.atoms();
        assert_eq!(atoms.least, None);
        assert_eq!(atoms.atoms, vec![0, 1], "all minimal elements reported");
    }

    #[test]
    fn dom_derived_from_double_antidom() {
        let sig = Signature::new([
            OpSymbol::Compose,
            OpSymbol::Meet,
            OpSymbol::Antidom,
            OpSymbol::Ran,
        ])
        .unwrap();
        let a = FiniteAlgebra::new(
            sig,
            vec!["z".into(), "e".into()],
            Tables {
                compose: Some(vec![vec![0, 0], vec![0, 1]]),
                meet: Some(vec![vec![0, 0], vec![0, 1]]),
                antidom: Some(vec![1, 0]),
                ran: Some(vec![0, 1]),
                ..Tables::default()
            },
        )
        .unwrap();
        assert_eq!(a.dom_of(0), 0, "dom z = antidom(antidom z) = antidom e = z");
        assert_eq!(a.dom_of(1), 1);
        assert!(a.necessary_laws().pass());
    }
}
