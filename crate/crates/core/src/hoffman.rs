//! Words over `{x, y}`, the letters `z_k = y x^(k-1)`, integer linear
//! combinations of words, and the shuffle product.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A word in the free monoid on `{x, y}`. The empty word is the unit.
///
/// Words are ordered by length first, then lexicographically with `x < y`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn x_power(n: u32) -> Self {
        Word(vec![Letter::X; n as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// Lies in `Q + yH`: empty or starting with `y`.
    pub fn in_yh(&self) -> bool {
        self.0.first().is_none_or(|&l| l == Letter::Y)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// The letters, or `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts a string of `x`/`y`; `""` and `"1"` denote the empty word.
    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse(format!("invalid letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A finite sequence of positive integers `(k_1, ..., k_r)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZTuple(Vec<u32>);

impl ZTuple {
    pub fn new(entries: impl Into<Vec<u32>>) -> Result<Self> {
        let entries = entries.into();
        if entries.contains(&0) {
            return Err(Error::InvalidZIndex(format!(
                "{entries:?} has a zero entry"
            )));
        }
        Ok(ZTuple(entries))
    }

    pub fn empty() -> Self {
        ZTuple(Vec::new())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&k| u64::from(k)).sum()
    }

    pub fn reversed(&self) -> ZTuple {
        ZTuple(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &ZTuple) -> ZTuple {
        ZTuple(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for ZTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ZTuple {
    type Err = Error;

    /// Comma-separated positive integers; the empty string is the empty tuple.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ZTuple::empty());
        }
        let entries = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("index entry {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ZTuple::new(entries)
    }
}

/// `z_{k_1} ... z_{k_r}` with `z_k = y x^(k-1)`.
pub fn z_word(t: &ZTuple) -> Word {
    let mut letters = Vec::with_capacity(t.weight() as usize);
    for &k in t.entries() {
        letters.push(Letter::Y);
        letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
    }
    Word(letters)
}

/// Inverse of [`z_word`] on `Q + yH`.
pub fn word_to_ztuple(w: &Word) -> Result<ZTuple> {
    if !w.in_yh() {
        return Err(Error::NotInYH(w.to_string()));
    }
    let mut out: Vec<u32> = Vec::new();
    for &l in w.letters() {
        match l {
            Letter::Y => out.push(1),
            Letter::X => *out.last_mut().unwrap() += 1,
        }
    }
    Ok(ZTuple(out))
}

/// A finitely supported integer combination of words. Zero coefficients are
/// never stored, and terms iterate in canonical word order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinComb(BTreeMap<Word, BigInt>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    /// The unit `1 * (empty word)`.
    pub fn one() -> Self {
        LinComb::monomial(Word::empty(), BigInt::one())
    }

    pub fn monomial(word: Word, coeff: impl Into<BigInt>) -> Self {
        let mut out = LinComb::zero();
        out.add_term(word, coeff.into());
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, BigInt)>) -> Self {
        let mut out = LinComb::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.0.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LinComb) {
        for (w, c) in &other.0 {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scale(&self, factor: &BigInt) -> LinComb {
        LinComb::from_terms(self.0.iter().map(|(w, c)| (w.clone(), c * factor)))
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self) -> BigInt {
        self.0.values().sum()
    }

    /// `(k_1..k_r, coeff)` pairs, or `NotInYH` if some word starts with `x`.
    pub fn z_terms(&self) -> Result<Vec<(ZTuple, BigInt)>> {
        self.0
            .iter()
            .map(|(w, c)| Ok((word_to_ztuple(w)?, c.clone())))
            .collect()
    }

    pub fn to_word_json(&self) -> Vec<WordTerm> {
        self.0
            .iter()
            .map(|(w, c)| WordTerm {
                word: w.letters().iter().map(|l| l.as_char()).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn to_z_json(&self) -> Result<Vec<ZTerm>> {
        Ok(self
            .z_terms()?
            .into_iter()
            .map(|(t, c)| ZTerm {
                index: t.entries().to_vec(),
                coeff: c.to_string(),
            })
            .collect())
    }

    pub fn from_word_json(terms: &[WordTerm]) -> Result<Self> {
        let mut out = LinComb::zero();
        for t in terms {
            let coeff = t
                .coeff
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("coefficient {:?}: {e}", t.coeff)))?;
            out.add_term(t.word.parse()?, coeff);
        }
        Ok(out)
    }

    /// Human form in z-letters, e.g. `2·z2z2 + 4·z1z3`.
    pub fn display_z(&self) -> Result<String> {
        let terms = self
            .z_terms()?
            .into_iter()
            .map(|(t, c)| {
                let word: String = t.entries().iter().map(|k| format!("z{k}")).collect();
                (word, c)
            })
            .collect::<Vec<_>>();
        Ok(render_terms(terms))
    }
}

fn render_terms(terms: Vec<(String, BigInt)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (word, c)) in terms.into_iter().enumerate() {
        let mag = if c < BigInt::zero() {
            -c.clone()
        } else {
            c.clone()
        };
        match (i, c < BigInt::zero()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if word.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{mag}·{word}"));
        }
    }
    out
}

impl fmt::Display for LinComb {
    /// Human form in letters, e.g. `2·yxyx + 4·yyxx`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .0
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    String::new()
                } else {
                    w.to_string()
                };
                (word, c.clone())
            })
            .collect();
        f.write_str(&render_terms(terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordTerm {
    pub word: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZTerm {
    pub index: Vec<u32>,
    pub coeff: String,
}

/// The shuffle product of two words.
///
/// Uses the defining recursion on last letters,
/// `(w1 u1) ш (w2 u2) = (w1 ш w2 u2) u1 + (w1 u1 ш w2) u2`,
/// memoised over prefix pairs: `table[i][j]` holds `a[..i] ш b[..j]`.
pub fn shuffle(a: &Word, b: &Word) -> LinComb {
    let (a, b) = (a.letters(), b.letters());
    let mut prev: Vec<LinComb> = Vec::with_capacity(b.len() + 1);
    // row i = 0: 1 ш b[..j] = b[..j]
    for j in 0..=b.len() {
        prev.push(LinComb::monomial(
            Word::from_letters(b[..j].iter().copied()),
            1,
        ));
    }
    for i in 1..=a.len() {
        let mut row: Vec<LinComb> = Vec::with_capacity(b.len() + 1);
        row.push(LinComb::monomial(
            Word::from_letters(a[..i].iter().copied()),
            1,
        ));
        for j in 1..=b.len() {
            let mut cell = append_letter(&prev[j], a[i - 1]);
            cell.add_assign(&append_letter(&row[j - 1], b[j - 1]));
            row.push(cell);
        }
        prev = row;
    }
    prev.pop().unwrap()
}

fn append_letter(comb: &LinComb, letter: Letter) -> LinComb {
    LinComb(
        comb.0
            .iter()
            .map(|(w, c)| {
                let mut letters = w.0.clone();
                letters.push(letter);
                (Word(letters), c.clone())
            })
            .collect(),
    )
}

/// Bilinear extension of [`shuffle`].
pub fn shuffle_lincomb(a: &LinComb, b: &LinComb) -> LinComb {
    let mut memo: BTreeMap<(&Word, &Word), LinComb> = BTreeMap::new();
    let mut out = LinComb::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let key = if wa <= wb { (wa, wb) } else { (wb, wa) };
            let prod = memo.entry(key).or_insert_with(|| shuffle(key.0, key.1));
            out.add_assign(&prod.scale(&(ca * cb)));
        }
    }
    out
}

/// Right multiplication of every monomial by `w`.
pub fn concat_right(a: &LinComb, w: &Word) -> LinComb {
    LinComb(a.0.iter().map(|(u, c)| (u.concat(w), c.clone())).collect())
}
