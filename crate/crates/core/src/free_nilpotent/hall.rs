use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::exact_linear::sparse::Accumulator;
use crate::exact_linear::{QVec, Rational, Q};
use crate::lie_core::LieAlgebra;

use super::FreeError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HallShape {
    /// Generator `X_{k+1}`.
    Generator(usize),
    /// `[left, right]` by basis index.
    Bracket(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallWord {
    pub index: usize,
    pub shape: HallShape,
    pub degree: usize,
    pub multidegree: Vec<u32>,
}

/// Hall basis of the free nilpotent Lie algebra of class `c` on `g`
/// generators, with a memoized rewriting of brackets into normal form.
///
/// Words are ordered by degree and, within a degree, lexicographically by
/// `(left index, right index)`. A pair `[a, b]` is a basis word when
/// `a < b` and, if `b = [b1, b2]`, also `a >= b1`.
pub struct HallBasis {
    gens: usize,
    class: usize,
    words: Vec<HallWord>,
    degree_start: Vec<usize>,
    by_pair: HashMap<(usize, usize), usize>,
    memo: RwLock<HashMap<(usize, usize), Arc<QVec>>>,
}

impl fmt::Debug for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HallBasis").field("gens", &self.gens).field("class", &self.class).field("dim", &self.words.len()).finish()
    }
}

impl HallBasis {
    pub fn generate(gens: usize, class: usize) -> Result<Self, FreeError> {
        if gens == 0 || class == 0 {
            return Err(FreeError::InvalidParameters { gens, class });
        }
        let mut words: Vec<HallWord> = (0..gens)
            .map(|k| {
                let mut md = vec![0; gens];
                md[k] = 1;
                HallWord { index: k, shape: HallShape::Generator(k), degree: 1, multidegree: md }
            })
            .collect();
        let mut degree_start = vec![0, gens];
        let mut by_pair = HashMap::new();
        for d in 2..=class {
            let mut fresh = Vec::new();
            for a in &words {
                for b in &words[a.index + 1..] {
                    if a.degree + b.degree != d {
                        continue;
                    }
                    if let HallShape::Bracket(b1, _) = b.shape {
                        if a.index < b1 {
                            continue;
                        }
                    }
                    let multidegree = a.multidegree.iter().zip(&b.multidegree).map(|(x, y)| x + y).collect();
                    fresh.push((a.index, b.index, multidegree));
                }
            }
            for (a, b, multidegree) in fresh {
                let index = words.len();
                by_pair.insert((a, b), index);
                words.push(HallWord { index, shape: HallShape::Bracket(a, b), degree: d, multidegree });
            }
            degree_start.push(words.len());
        }
        Ok(HallBasis { gens, class, words, degree_start, by_pair, memo: RwLock::new(HashMap::new()) })
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &HallWord {
        &self.words[i]
    }

    /// Indices of the words of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d == 0 || d > self.class {
            return 0..0;
        }
        self.degree_start[d - 1]..self.degree_start[d]
    }

    /// Number of words of each degree `1..=c`.
    pub fn degree_sizes(&self) -> Vec<usize> {
        (1..=self.class).map(|d| self.degree_range(d).len()).collect()
    }

    /// Index of the basis word `[a, b]`, if that pair is a Hall word.
    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        self.by_pair.get(&(a, b)).copied()
    }

    pub fn generator(&self, k: usize) -> QVec {
        QVec::unit(&Q, k)
    }

    pub fn label(&self, i: usize) -> String {
        match self.words[i].shape {
            HallShape::Generator(k) => format!("X{}", k + 1),
            HallShape::Bracket(a, b) => format!("[{},{}]", self.label(a), self.label(b)),
        }
    }

    /// Bracket of two basis words in Hall coordinates.
    pub fn bracket_words(&self, i: usize, j: usize) -> QVec {
        (*self.normal_form_words(i, j, 0)).clone()
    }

    /// Bracket of two elements in Hall coordinates; bilinear extension of
    /// [`HallBasis::bracket_words`].
    pub fn bracket(&self, u: &QVec, v: &QVec) -> QVec {
        let mut acc = Accumulator::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                if self.words[i].degree + self.words[j].degree > self.class {
                    continue;
                }
                let w = self.normal_form_words(i, j, 0);
                acc.add_scaled(&Q, &(a * b), &w);
            }
        }
        acc.finish(&Q)
    }

    fn memo_get(&self, key: (usize, usize)) -> Option<Arc<QVec>> {
        self.memo.read().expect("memo lock").get(&key).cloned()
    }

    /// Rewrites `[e_i, e_j]` into Hall coordinates.
    ///
    /// For `i < j = [b1, b2]` with `i < b1` the Jacobi identity gives
    /// `[i, [b1, b2]] = [[i, b1], b2] + [b1, [i, b2]]`. Every pair in the
    /// recursive calls has total degree `deg i + deg j` and smaller member
    /// strictly above `i`: words of `[i, b1]` and `[i, b2]` have larger degree
    /// than `i`, and `b1 < b2` are both above `i`. The smaller member can only
    /// increase finitely often, so the recursion ends at Hall words or at
    /// brackets past class `c`.
    fn normal_form_words(&self, i: usize, j: usize, depth: usize) -> Arc<QVec> {
        assert!(depth <= 2 * self.words.len() + 16, "Hall rewriting exceeded its recursion bound");
        if i == j || self.words[i].degree + self.words[j].degree > self.class {
            return Arc::new(QVec::zero());
        }
        if i > j {
            return Arc::new(self.normal_form_words(j, i, depth + 1).neg(&Q));
        }
        if let Some(hit) = self.memo_get((i, j)) {
            return hit;
        }
        let result = match self.words[j].shape {
            HallShape::Generator(_) => QVec::unit(&Q, self.by_pair[&(i, j)]),
            HallShape::Bracket(b1, _) if i >= b1 => QVec::unit(&Q, self.by_pair[&(i, j)]),
            HallShape::Bracket(b1, b2) => {
                let mut acc = Accumulator::new();
                let left = self.normal_form_words(i, b1, depth + 1);
                for (k, c) in left.iter() {
                    acc.add_scaled(&Q, c, &self.normal_form_words(k, b2, depth + 1));
                }
                let right = self.normal_form_words(i, b2, depth + 1);
                for (k, c) in right.iter() {
                    acc.add_scaled(&Q, c, &self.normal_form_words(b1, k, depth + 1));
                }
                acc.finish(&Q)
            }
        };
        let result = Arc::new(result);
        // a concurrent writer computed the same value, either copy is fine
        self.memo.write().expect("memo lock").entry((i, j)).or_insert_with(|| result.clone());
        result
    }

    /// Multidegree of a multihomogeneous element.
    pub fn multidegree_of(&self, v: &QVec) -> Option<Vec<u32>> {
        let mut it = v.iter().map(|(i, _)| &self.words[i].multidegree);
        let first = it.next()?;
        it.all(|d| d == first).then(|| first.clone())
    }

    /// Structure constants `[e_i, e_j]` for `i < j` with `deg i + deg j <= c`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, QVec)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let di = self.words[i].degree;
            for j in i + 1..self.dim() {
                if di + self.words[j].degree > self.class {
                    // words are sorted by degree, so every later j is too long
                    break;
                }
                let v = self.bracket_words(i, j);
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// The free nilpotent algebra as a [`LieAlgebra`] with Hall labels and
    /// multidegrees.
    pub fn to_lie_algebra(&self) -> LieAlgebra {
        LieAlgebra::from_brackets(self.dim(), self.structure_constants())
            .expect("Hall table is antisymmetric and in range")
            .with_labels((0..self.dim()).map(|i| self.label(i)).collect())
            .expect("one label per word")
            .with_multidegree(self.words.iter().map(|w| w.multidegree.clone()).collect())
            .expect("one multidegree per word")
    }

    /// Parses a bracket expression such as `[[X4,X3,X4],X2,X1,X2]` into Hall
    /// coordinates. Lists nest to the right: `[a,b,c] = [a,[b,c]]`.
    pub fn parse(&self, s: &str) -> Result<QVec, FreeError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, basis: self };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }

    /// Hall coordinates of `[X_a, [X_b, ...]]` from 1-based generator indices.
    pub fn right_normed(&self, gens: &[usize]) -> QVec {
        let (last, rest) = gens.split_last().expect("nonempty");
        rest.iter().rev().fold(self.generator(last - 1), |acc, &g| self.bracket(&self.generator(g - 1), &acc))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    basis: &'a HallBasis,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> FreeError {
        FreeError::Parse { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<QVec, FreeError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'X') | Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let k: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .ok()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| self.error("expected generator number"))?;
                if k == 0 || k > self.basis.gens() {
                    return Err(self.error("generator index out of range"));
                }
                Ok(self.basis.generator(k - 1))
            }
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            items.push(self.expr()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ']'")),
                    }
                }
                if items.len() < 2 {
                    return Err(self.error("a bracket needs at least two entries"));
                }
                let last = items.pop().expect("nonempty");
                Ok(items.iter().rev().fold(last, |acc, a| self.basis.bracket(a, &acc)))
            }
            _ => Err(self.error("expected 'X' or '['")),
        }
    }
}

/// Element of a free nilpotent algebra tied to its Hall basis.
#[derive(Clone, Debug)]
pub struct FreeElement<'a> {
    basis: &'a HallBasis,
    coords: QVec,
}

impl<'a> FreeElement<'a> {
    pub fn new(basis: &'a HallBasis, coords: QVec) -> Result<Self, FreeError> {
        if coords.max_index().is_some_and(|m| m >= basis.dim()) {
            return Err(FreeError::OutOfRange);
        }
        Ok(FreeElement { basis, coords })
    }

    pub fn word(basis: &'a HallBasis, i: usize) -> Self {
        FreeElement { basis, coords: QVec::unit(&Q, i) }
    }

    pub fn coords(&self) -> &QVec {
        &self.coords
    }

    pub fn basis(&self) -> &'a HallBasis {
        self.basis
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FreeElement { basis: self.basis, coords: self.coords.scale(&Q, c) }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FreeError> {
        self.same_basis(other)?;
        Ok(FreeElement { basis: self.basis, coords: self.coords.add(&Q, &other.coords) })
    }

    fn same_basis(&self, other: &Self) -> Result<(), FreeError> {
        if std::ptr::eq(self.basis, other.basis) {
            Ok(())
        } else {
            Err(FreeError::MismatchedBases)
        }
    }
}

impl PartialEq for FreeElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.basis, other.basis) && self.coords == other.coords
    }
}

/// `[a, b]` in Hall normal form.
pub fn normal_form<'a>(a: &FreeElement<'a>, b: &FreeElement<'a>) -> Result<FreeElement<'a>, FreeError> {
    a.same_basis(b)?;
    Ok(FreeElement { basis: a.basis, coords: a.basis.bracket(&a.coords, &b.coords) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degree_sizes() {
        assert_eq!(HallBasis::generate(4, 2).unwrap().degree_sizes(), vec![4, 6]);
        assert_eq!(HallBasis::generate(1, 3).unwrap().degree_sizes(), vec![1, 0, 0]);
        assert_eq!(HallBasis::generate(2, 5).unwrap().degree_sizes(), vec![2, 1, 2, 3, 6]);
        assert!(HallBasis::generate(0, 2).is_err());
    }

    #[test]
    fn rewriting_examples() {
        let b = HallBasis::generate(3, 3).unwrap();
        let x = |k: usize| FreeElement::word(&b, k - 1);
        let x12 = b.pair_index(0, 1).unwrap();
        assert_eq!(normal_form(&x(2), &x(1)).unwrap().coords(), &QVec::from_ints(&[(x12, -1)]));
        // [X1,[X2,X3]] = [X2,[X1,X3]] - [X3,[X1,X2]]
        let x23 = b.parse("[X2,X3]").unwrap();
        let lhs = b.bracket(&b.generator(0), &x23);
        let p = b.pair_index(1, b.pair_index(0, 2).unwrap()).unwrap();
        let q = b.pair_index(2, x12).unwrap();
        assert_eq!(lhs, QVec::from_ints(&[(p, 1), (q, -1)]));
        assert!(b.bracket(&x23, &x23).is_zero());
    }

    #[test]
    fn labels_and_parser() {
        let b = HallBasis::generate(2, 3).unwrap();
        let labels: Vec<String> = (0..b.dim()).map(|i| b.label(i)).collect();
        assert_eq!(labels, vec!["X1", "X2", "[X1,X2]", "[X1,[X1,X2]]", "[X2,[X1,X2]]"]);
        for (i, l) in labels.iter().enumerate() {
            assert_eq!(b.parse(l).unwrap(), QVec::unit(&Q, i));
        }
        assert_eq!(b.parse("[X1,X1,X2]").unwrap(), QVec::unit(&Q, 3));
        assert_eq!(b.right_normed(&[2, 1, 2]), QVec::unit(&Q, 4));
        assert!(b.parse("[X1,X3]").is_err());
        assert!(b.parse("[X1]").is_err());
        assert!(b.parse("[X1,X2").is_err());
        // class 3: degree-4 brackets vanish
        assert!(b.parse("[X1,[X2,[X1,X2]]]").unwrap().is_zero());
    }

    #[test]
    fn mismatched_bases() {
        let a = HallBasis::generate(2, 2).unwrap();
        let b = HallBasis::generate(2, 2).unwrap();
        assert!(matches!(normal_form(&FreeElement::word(&a, 0), &FreeElement::word(&b, 1)), Err(FreeError::MismatchedBases)));
    }

    #[test]
    fn heisenberg_table() {
        let b = HallBasis::generate(2, 2).unwrap();
        assert_eq!(b.structure_constants(), vec![(0, 1, QVec::unit(&Q, 2))]);
    }
}
