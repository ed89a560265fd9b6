use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use freegroup::{Alphabet, Letter, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::PresentationError;
use crate::presentation::{Family, Presentation};

/// Canonical representation of a group element in one of the built-in models.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vector(Vec<i64>),
    Residue(u64),
    /// Upper unitriangular `[[1,a,c],[0,1,b],[0,0,1]]` as `(a, b, c)`.
    Heisenberg(i64, i64, i64),
    /// Lit lamps and lamplighter position.
    Lamps(BTreeSet<i64>, i64),
    /// The affine map `x ↦ 2^k x + t` as `(k, t)`.
    Affine(i64, BigRational),
    Free(Word),
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) => write!(f, "{v:?}"),
            Element::Residue(r) => write!(f, "{r}"),
            Element::Heisenberg(a, b, c) => write!(f, "({a},{b},{c})"),
            Element::Lamps(l, p) => write!(f, "({l:?},{p})"),
            Element::Affine(k, t) => write!(f, "2^{k}x+{t}"),
            Element::Free(w) => write!(f, "{w:?}"),
        }
    }
}

/// A group with a total, terminating word-problem oracle.
pub trait GroupModel: Send + Sync {
    fn name(&self) -> String;

    fn presentation(&self) -> &Presentation;

    fn alphabet(&self) -> &Alphabet {
        self.presentation().alphabet()
    }

    fn identity(&self) -> Element;

    /// Right multiplication `g ← g·l`.
    fn act(&self, g: &mut Element, l: Letter);

    /// Left multiplication `l·g`.
    fn left_act(&self, l: Letter, g: &Element) -> Element;

    fn normal_form(&self, w: &Word) -> Element {
        let mut g = self.identity();
        for &l in w.letters() {
            self.act(&mut g, l);
        }
        g
    }

    fn is_trivial(&self, w: &Word) -> bool {
        self.normal_form(w) == self.identity()
    }

    /// Group order when finite.
    fn order(&self) -> Option<u64> {
        None
    }

    /// A generator of infinite order, if one is known.
    fn infinite_generator(&self) -> Option<usize> {
        None
    }
}

pub type Model = Arc<dyn GroupModel>;

/// Abelian group given by images of the generators in `Z^k`.
pub struct LinearModel {
    name: String,
    presentation: Presentation,
    images: Vec<Vec<i64>>,
}

impl LinearModel {
    pub fn new(name: &str, presentation: Presentation, images: Vec<Vec<i64>>) -> LinearModel {
        assert_eq!(images.len(), presentation.rank());
        LinearModel {
            name: name.to_string(),
            presentation,
            images,
        }
    }

    /// `Z^d` with the commutator presentation.
    pub fn free_abelian(d: usize) -> LinearModel {
        let names = ['x', 'y', 'z', 'w'];
        let alphabet = if d <= 4 {
            Alphabet::with_names(&names[..d]).unwrap()
        } else {
            Alphabet::new(d).unwrap()
        };
        let mut rels = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let xi = Word::letter(Letter::pos(i));
                let xj = Word::letter(Letter::pos(j));
                rels.push(Word::commutator(&xi, &xj));
            }
        }
        let images = (0..d)
            .map(|i| (0..d).map(|j| (i == j) as i64).collect())
            .collect();
        let name = if d == 1 { "Z".to_string() } else { format!("Z{d}") };
        LinearModel::new(&name, Presentation::finite(alphabet, rels).unwrap(), images)
    }

    fn add(&self, v: &mut [i64], l: Letter) {
        for (x, y) in v.iter_mut().zip(&self.images[l.generator()]) {
            *x += l.sign() * y;
        }
    }
}

impl GroupModel for LinearModel {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn identity(&self) -> Element {
        Element::Vector(vec![0; self.images.first().map_or(0, Vec::len)])
    }

    fn act(&self, g: &mut Element, l: Letter) {
        if let Element::Vector(v) = g {
            self.add(v, l);
        }
    }

    fn left_act(&self, l: Letter, g: &Element) -> Element {
        let mut h = g.clone();
        self.act(&mut h, l);
        h
    }

    fn infinite_generator(&self) -> Option<usize> {
        self.images.iter().position(|v| v.iter().any(|&x| x != 0))
    }
}

/// `Z/m` on one generator.
pub struct CyclicModel {
    m: u64,
    presentation: Presentation,
}

impl CyclicModel {
    pub fn new(m: u64) -> CyclicModel {
        assert!(m >= 1);
        let alphabet = Alphabet::with_names(&['x']).unwrap();
        let rel = Word::power(0, m as i64);
        CyclicModel {
            m,
            presentation: Presentation::finite(alphabet, vec![rel]).unwrap(),
        }
    }
}

impl GroupModel for CyclicModel {
    fn name(&self) -> String {
        format!("C{}", self.m)
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn identity(&self) -> Element {
        Element::Residue(0)
    }

    fn act(&self, g: &mut Element, l: Letter) {
        if let Element::Residue(r) = g {
            *r = if l.is_inverse() {
                (*r + self.m - 1) % self.m
            } else {
                (*r + 1) % self.m
            };
        }
    }

    fn left_act(&self, l: Letter, g: &Element) -> Element {
        let mut h = g.clone();
        self.act(&mut h, l);
        h
    }

    fn order(&self) -> Option<u64> {
        Some(self.m)
    }
}

/// The discrete Heisenberg group on `x, y`.
pub struct HeisenbergModel {
    presentation: Presentation,
}

impl HeisenbergModel {
    pub fn new() -> HeisenbergModel {
        let alphabet = Alphabet::with_names(&['x', 'y']).unwrap();
        let x = Word::letter(Letter::pos(0));
        let y = Word::letter(Letter::pos(1));
        let z = Word::commutator(&x, &y);
        let rels = vec![Word::commutator(&z, &x), Word::commutator(&z, &y)];
        HeisenbergModel {
            presentation: Presentation::finite(alphabet, rels).unwrap(),
        }
    }
}

impl Default for HeisenbergModel {
    fn default() -> Self {
        Self::new()
    }
}

impl GroupModel for HeisenbergModel {
    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn identity(&self) -> Element {
        Element::Heisenberg(0, 0, 0)
    }

    fn act(&self, g: &mut Element, l: Letter) {
        if let Element::Heisenberg(a, b, c) = g {
            let s = l.sign();
            if l.generator() == 0 {
                *a += s;
            } else {
                *b += s;
                *c += s * *a;
            }
        }
    }

    fn left_act(&self, l: Letter, g: &Element) -> Element {
        let Element::Heisenberg(a, b, c) = *g else {
            return g.clone();
        };
        let s = l.sign();
        if l.generator() == 0 {
            Element::Heisenberg(a + s, b, c + s * b)
        } else {
            Element::Heisenberg(a, b + s, c)
        }
    }

    fn infinite_generator(&self) -> Option<usize> {
        Some(0)
    }
}

/// `Z/2 ≀ Z` on `a` (lamp) and `t` (shift).
pub struct LamplighterModel {
    presentation: Presentation,
}

impl LamplighterModel {
    pub fn new() -> LamplighterModel {
        let alphabet = Alphabet::with_names(&['a', 't']).unwrap();
        LamplighterModel {
            presentation: Presentation::family(alphabet, Family::Lamplighter).unwrap(),
        }
    }
}

impl Default for LamplighterModel {
    fn default() -> Self {
        Self::new()
    }
}

fn toggle(lamps: &mut BTreeSet<i64>, p: i64) {
    if !lamps.remove(&p) {
        lamps.insert(p);
    }
}

impl GroupModel for LamplighterModel {
    fn name(&self) -> String {
        "lamplighter".into()
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn identity(&self) -> Element {
        Element::Lamps(BTreeSet::new(), 0)
    }

    fn act(&self, g: &mut Element, l: Letter) {
        if let Element::Lamps(lamps, p) = g {
            if l.generator() == 0 {
                toggle(lamps, *p);
            } else {
                *p += l.sign();
            }
        }
    }

    fn left_act(&self, l: Letter, g: &Element) -> Element {
        let Element::Lamps(lamps, p) = g else {
            return g.clone();
        };
        if l.generator() == 0 {
            let mut lamps = lamps.clone();
            toggle(&mut lamps, 0);
            Element::Lamps(lamps, *p)
        } else {
            let s = l.sign();
            Element::Lamps(lamps.iter().map(|q| q + s).collect(), p + s)
        }
    }

    fn infinite_generator(&self) -> Option<usize> {
        Some(1)
    }
}

/// `BS(1,2) = ⟨a, b | b a b^-1 a^-2⟩` acting on the rationals by
/// `a: x ↦ x + 1`, `b: x ↦ 2x`.
pub struct Bs12Model {
    presentation: Presentation,
}

impl Bs12Model {
    pub fn new() -> Bs12Model {
        let alphabet = Alphabet::with_names(&['a', 'b']).unwrap();
        let rel = alphabet.parse_word("baBAA").unwrap();
        Bs12Model {
            presentation: Presentation::finite(alphabet, vec![rel]).unwrap(),
        }
    }
}

impl Default for Bs12Model {
    fn default() -> Self {
        Self::new()
    }
}

fn two_pow(k: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::one() << k.unsigned_abs());
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

impl GroupModel for Bs12Model {
    fn name(&self) -> String {
        "bs12".into()
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn identity(&self) -> Element {
        Element::Affine(0, BigRational::zero())
    }

    // g∘l: apply l first, then g
    fn act(&self, g: &mut Element, l: Letter) {
        if let Element::Affine(k, t) = g {
            if l.generator() == 0 {
                let step = two_pow(*k);
                if l.is_inverse() {
                    *t -= step;
                } else {
                    *t += step;
                }
            } else {
                *k += l.sign();
            }
        }
    }

    fn left_act(&self, l: Letter, g: &Element) -> Element {
        let Element::Affine(k, t) = g else {
            return g.clone();
        };
        if l.generator() == 0 {
            Element::Affine(*k, t + BigRational::from_integer(BigInt::from(l.sign())))
        } else if l.is_inverse() {
            Element::Affine(k - 1, t / BigRational::from_integer(BigInt::from(2)))
        } else {
            Element::Affine(k + 1, t * BigRational::from_integer(BigInt::from(2)))
        }
    }

    fn infinite_generator(&self) -> Option<usize> {
        Some(0)
    }
}

/// The free group itself; normal forms are reduced words.
pub struct FreeModel {
    presentation: Presentation,
}

impl FreeModel {
    pub fn new(alphabet: Alphabet) -> FreeModel {
        FreeModel {
            presentation: Presentation::free(alphabet),
        }
    }
}

impl GroupModel for FreeModel {
    fn name(&self) -> String {
        format!("free{}", self.presentation.rank())
    }

    fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn identity(&self) -> Element {
        Element::Free(Word::empty())
    }

    fn act(&self, g: &mut Element, l: Letter) {
        if let Element::Free(w) = g {
            w.push(l);
        }
    }

    fn left_act(&self, l: Letter, g: &Element) -> Element {
        match g {
            Element::Free(w) => Element::Free(Word::letter(l).mul(w)),
            other => other.clone(),
        }
    }

    fn normal_form(&self, w: &Word) -> Element {
        Element::Free(w.clone())
    }

    fn infinite_generator(&self) -> Option<usize> {
        Some(0)
    }
}

/// Resolves a model name: `Z`, `Z1`..`Z4` (also `Z(d)`), `heisenberg`,
/// `lamplighter`, `bs12`, `C<m>` (also `finite-cyclic(m)`), `free<d>`.
pub fn builtin_model(name: &str) -> Result<Model, PresentationError> {
    let unknown = || PresentationError::UnknownModel(name.to_string());
    let n = name.trim();
    let inner = |prefix: &str| -> Option<&str> {
        n.strip_prefix(prefix)
            .map(|r| r.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(r))
    };
    match n {
        "Z" => return Ok(Arc::new(LinearModel::free_abelian(1))),
        "heisenberg" => return Ok(Arc::new(HeisenbergModel::new())),
        "lamplighter" => return Ok(Arc::new(LamplighterModel::new())),
        "bs12" => return Ok(Arc::new(Bs12Model::new())),
        _ => {}
    }
    if let Some(m) = inner("finite-cyclic").or_else(|| inner("C")) {
        let m: u64 = m.parse().map_err(|_| unknown())?;
        if m == 0 {
            return Err(unknown());
        }
        return Ok(Arc::new(CyclicModel::new(m)));
    }
    if let Some(d) = inner("free") {
        let d: usize = d.parse().map_err(|_| unknown())?;
        return Ok(Arc::new(FreeModel::new(Alphabet::new(d).map_err(|_| unknown())?)));
    }
    if let Some(d) = inner("Z") {
        let d: usize = d.parse().map_err(|_| unknown())?;
        if (1..=4).contains(&d) {
            return Ok(Arc::new(LinearModel::free_abelian(d)));
        }
    }
    Err(unknown())
}
