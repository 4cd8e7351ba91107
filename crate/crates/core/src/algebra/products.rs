//! Word-level shuffle and quasi-shuffle expansions with per-thread
//! memoization. Both products are computed on suffix pairs, so the caches
//! are keyed on `(left suffix, right suffix)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::One;

use super::word::Letter;

/// Integer linear combination of letter sequences.
pub type WordCounts = HashMap<Vec<Letter>, BigInt>;

/// A generator `(k, a)`: `z_{k,a}` or `y_{k,a}`.
pub type Gen = (u32, u32);
pub type GenCounts = HashMap<Vec<Gen>, BigInt>;

/// Diagonal ("stuffing") rule of a quasi-shuffle product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diagonal {
    /// `z_{k,a}, z_{l,b} ↦ z_{k+l, a+b mod N}` with coefficient 1.
    TwistSum { level: u32 },
    /// `y_{k,a}, y_{l,b} ↦ δ_{a,b}·N·y_{k+l,a}`.
    SameTwist { level: u32 },
}

impl Diagonal {
    fn merge(self, x: Gen, y: Gen) -> Option<(Gen, u32)> {
        match self {
            Diagonal::TwistSum { level } => Some(((x.0 + y.0, (x.1 + y.1) % level), 1)),
            Diagonal::SameTwist { level } => (x.1 == y.1).then_some(((x.0 + y.0, x.1), level)),
        }
    }
}

const CACHE_LIMIT: usize = 1 << 18;

type ShuffleCache = HashMap<(Vec<Letter>, Vec<Letter>), Rc<WordCounts>>;
type StuffleCache = HashMap<(Diagonal, Vec<Gen>, Vec<Gen>), Rc<GenCounts>>;

thread_local! {
    static SHUFFLE_CACHE: RefCell<ShuffleCache> =
        RefCell::new(HashMap::new());
    static STUFFLE_CACHE: RefCell<StuffleCache> =
        RefCell::new(HashMap::new());
}

fn add_count<K: std::hash::Hash + Eq>(map: &mut HashMap<K, BigInt>, key: K, c: &BigInt) {
    *map.entry(key).or_default() += c;
}

/// `u ⧢ v` on letter sequences.
pub fn shuffle_words(u: &[Letter], v: &[Letter]) -> Rc<WordCounts> {
    if u.is_empty() || v.is_empty() {
        let mut m = WordCounts::new();
        m.insert(if u.is_empty() { v.to_vec() } else { u.to_vec() }, BigInt::one());
        return Rc::new(m);
    }
    // the product is commutative: normalise the key order
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let key = (u.to_vec(), v.to_vec());
    if let Some(hit) = SHUFFLE_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut out = WordCounts::new();
    for (head, rest_l, rest_r) in [(u[0], &u[1..], v), (v[0], u, &v[1..])] {
        for (w, c) in shuffle_words(rest_l, rest_r).iter() {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(head);
            word.extend_from_slice(w);
            add_count(&mut out, word, c);
        }
    }
    let out = Rc::new(out);
    SHUFFLE_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, out.clone());
    });
    out
}

/// Quasi-shuffle `u ∗ v` on generator sequences.
pub fn quasi_shuffle(u: &[Gen], v: &[Gen], diag: Diagonal) -> Rc<GenCounts> {
    if u.is_empty() || v.is_empty() {
        let mut m = GenCounts::new();
        m.insert(if u.is_empty() { v.to_vec() } else { u.to_vec() }, BigInt::one());
        return Rc::new(m);
    }
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let key = (diag, u.to_vec(), v.to_vec());
    if let Some(hit) = STUFFLE_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut out = GenCounts::new();
    let push_all = |head: Gen, scale: u32, l: &[Gen], r: &[Gen], out: &mut GenCounts| {
        let scale = BigInt::from(scale);
        for (w, c) in quasi_shuffle(l, r, diag).iter() {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(head);
            word.extend_from_slice(w);
            add_count(out, word, &(c * &scale));
        }
    };
    push_all(u[0], 1, &u[1..], v, &mut out);
    push_all(v[0], 1, u, &v[1..], &mut out);
    if let Some((g, c)) = diag.merge(u[0], v[0]) {
        push_all(g, c, &u[1..], &v[1..], &mut out);
    }
    let out = Rc::new(out);
    STUFFLE_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, out.clone());
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    #[test]
    fn shuffle_term_count_is_binomial() {
        let u = vec![Letter::X, Letter::Y(1)];
        let v = vec![Letter::Y(2), Letter::Y(2), Letter::Y(2)];
        let total: BigInt = shuffle_words(&u, &v).values().sum();
        assert_eq!(total, BigInt::from(binomial(5u32, 2)));
    }

    #[test]
    fn same_twist_diagonal_only_fires_on_equal_twists() {
        let d = Diagonal::SameTwist { level: 3 };
        let p = quasi_shuffle(&[(2, 1)], &[(3, 2)], d);
        assert_eq!(p.len(), 2);
        let p = quasi_shuffle(&[(2, 1)], &[(3, 1)], d);
        assert_eq!(p[&vec![(5, 1)]], BigInt::from(3));
    }
}
