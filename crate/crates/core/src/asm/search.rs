use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Asm, SymmetryClass};
use crate::exact::{BiPoly, BigInt, Monomial};

/// Receives each enumerated matrix. The reference is only valid for the
/// duration of the call.
pub trait Visitor {
    fn visit(&mut self, m: &Asm);
}

impl<F: FnMut(&Asm)> Visitor for F {
    fn visit(&mut self, m: &Asm) {
        self(m)
    }
}

/// Combines the results of two workers. Must be associative; parallel runs
/// merge worker results in a fixed order.
pub trait Merge {
    fn merge(&mut self, other: Self);
}

/// Cell layout for one `(n, class)` search: a cell is free when it is the
/// first cell of its orbit in row-major order; every other cell copies the
/// value of its orbit representative.
struct Plan {
    n: usize,
    rep: Vec<usize>,
    free: Vec<bool>,
}

impl Plan {
    fn new(n: usize, class: SymmetryClass) -> Plan {
        let mut rep = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                rep[i * n + j] = class
                    .group()
                    .iter()
                    .map(|g| {
                        let (a, b) = g.apply(n, i, j);
                        a * n + b
                    })
                    .min()
                    .unwrap();
            }
        }
        let free = (0..n * n).map(|k| rep[k] == k).collect();
        Plan { n, rep, free }
    }
}

/// Row-by-row backtracking over column partial sums.
///
/// `col[j]` is the sum of column `j` over the rows placed so far and stays
/// in `{0, 1}`; a row is accepted when its own running sum stays in
/// `{0, 1}` and ends at 1. These two conditions are exactly the ASM axioms.
struct Searcher<'a, V> {
    plan: &'a Plan,
    asm: Asm,
    col: Vec<i8>,
    first: usize,
    visitor: &'a mut V,
}

impl<V: Visitor> Searcher<'_, V> {
    fn run(&mut self) {
        self.go(0, 0, 0);
    }

    fn go(&mut self, i: usize, j: usize, h: i8) {
        let n = self.plan.n;
        if j == n {
            if h != 1 {
                return;
            }
            if i + 1 == n {
                self.visitor.visit(&self.asm);
            } else {
                self.go(i + 1, 0, 0);
            }
            return;
        }
        let idx = i * n + j;
        let c = self.col[j];
        let last = i + 1 == n;
        if !self.plan.free[idx] {
            let v = self.asm.entries[self.plan.rep[idx]];
            let (hv, cv) = (h + v, c + v);
            if (0..=1).contains(&hv) && (0..=1).contains(&cv) && (!last || cv == 1) {
                self.step(i, j, h, v);
            }
            return;
        }
        if i == 0 {
            // top row: exactly one 1, at the split column
            let v = i8::from(j == self.first);
            if h + v <= 1 && (!last || c + v == 1) {
                self.step(i, j, h, v);
            }
            return;
        }
        if !last || c == 1 {
            self.step(i, j, h, 0);
        }
        if h == 0 && c == 0 {
            self.step(i, j, h, 1);
        }
        if h == 1 && c == 1 && !last {
            self.step(i, j, h, -1);
        }
    }

    #[inline]
    fn step(&mut self, i: usize, j: usize, h: i8, v: i8) {
        let n = self.plan.n;
        self.asm.entries[i * n + j] = v;
        self.col[j] += v;
        self.go(i, j + 1, h + v);
        self.col[j] -= v;
    }
}

fn search_from<V: Visitor>(plan: &Plan, first: usize, visitor: &mut V) {
    let n = plan.n;
    let mut s = Searcher {
        plan,
        asm: Asm::blank(n),
        col: vec![0; n],
        first,
        visitor,
    };
    s.run();
}

/// Visits every `n x n` ASM of the class exactly once, in a deterministic
/// order. Sizes where the class is empty visit nothing.
pub fn enumerate<V: Visitor>(n: usize, class: SymmetryClass, visitor: &mut V) {
    if n == 0 || !class.exists(n) {
        return;
    }
    let plan = Plan::new(n, class);
    for first in 0..n {
        search_from(&plan, first, visitor);
    }
}

/// Like [`enumerate`], with one visitor per top-row position, run in
/// parallel and merged in position order.
pub fn enumerate_par<V, F>(n: usize, class: SymmetryClass, make: F) -> V
where
    V: Visitor + Merge + Send,
    F: Fn() -> V + Sync,
{
    if n == 0 || !class.exists(n) {
        return make();
    }
    let plan = Plan::new(n, class);
    let work = |first: usize| {
        let mut v = make();
        search_from(&plan, first, &mut v);
        v
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<V> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(work).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<V> = (0..n).map(work).collect();

    let mut parts = parts.into_iter();
    let mut acc = parts.next().unwrap_or_else(&make);
    for p in parts {
        acc.merge(p);
    }
    acc
}

#[derive(Debug, Clone, Default)]
pub struct CountVisitor(pub u64);

impl Visitor for CountVisitor {
    fn visit(&mut self, _: &Asm) {
        self.0 += 1;
    }
}

impl Merge for CountVisitor {
    fn merge(&mut self, other: Self) {
        self.0 += other.0;
    }
}

/// Accumulates `x^r y^s` class weights as a dense count table.
#[derive(Debug, Clone)]
pub struct GenfunVisitor {
    class: SymmetryClass,
    counts: Vec<Vec<u64>>,
}

impl GenfunVisitor {
    pub fn new(class: SymmetryClass) -> Self {
        GenfunVisitor {
            class,
            counts: Vec::new(),
        }
    }

    fn bump(&mut self, r: usize, s: usize, by: u64) {
        if self.counts.len() <= r {
            self.counts.resize(r + 1, Vec::new());
        }
        let row = &mut self.counts[r];
        if row.len() <= s {
            row.resize(s + 1, 0);
        }
        row[s] += by;
    }

    pub fn into_poly(self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (r, row) in self.counts.iter().enumerate() {
            for (s, &c) in row.iter().enumerate() {
                p.add_term(Monomial::new(r as u32, s as u32), BigInt::from(c));
            }
        }
        p
    }
}

impl Visitor for GenfunVisitor {
    fn visit(&mut self, m: &Asm) {
        let (r, s) = m
            .weight(self.class)
            .unwrap_or_else(|e| panic!("enumerated matrix breaks a class invariant: {e}\n{m}"));
        self.bump(r, s, 1);
    }
}

impl Merge for GenfunVisitor {
    fn merge(&mut self, other: Self) {
        for (r, row) in other.counts.iter().enumerate() {
            for (s, &c) in row.iter().enumerate() {
                if c > 0 {
                    self.bump(r, s, c);
                }
            }
        }
    }
}

/// Weighted generating function of one class at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedGF {
    pub class: u8,
    pub n: usize,
    #[serde(serialize_with = "ser_poly")]
    pub poly: BiPoly,
    #[serde(serialize_with = "ser_big")]
    pub count: BigInt,
}

fn ser_poly<S: serde::Serializer>(p: &BiPoly, s: S) -> Result<S::Ok, S::Error> {
    p.to_json().serialize(s)
}

fn ser_big<S: serde::Serializer>(b: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

impl WeightedGF {
    pub fn count_u64(&self) -> u64 {
        self.count.to_u64().unwrap_or(u64::MAX)
    }
}

/// Number of `n x n` ASMs in the class.
pub fn count(n: usize, class: SymmetryClass) -> u64 {
    enumerate_par(n, class, CountVisitor::default).0
}

/// Sum of class weights over all `n x n` ASMs in the class. Unweighted
/// classes give the count as a constant.
pub fn genfun(n: usize, class: SymmetryClass) -> WeightedGF {
    let poly = enumerate_par(n, class, || GenfunVisitor::new(class)).into_poly();
    let count = poly.eval_int(1, 1);
    WeightedGF {
        class: class.id(),
        n,
        poly,
        count,
    }
}
