use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::Error;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Exact element `a + b·√3 + c·i + d·i√3` of ℚ(i,√3).
///
/// Stored as four integer numerators over one positive common denominator,
/// reduced so the five integers share no factor. Values that fit in `i64`
/// use a word-sized representation; everything else falls back to `BigInt`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small([i64; 4], i64),
    Big(Box<BigParts>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BigParts {
    num: [BigInt; 4],
    den: BigInt,
}

fn finish_i128(mut num: [i128; 4], mut den: i128) -> Option<FieldElement> {
    if num.iter().all(|&x| x == 0) {
        return Some(FieldElement::zero());
    }
    if den < 0 {
        den = den.checked_neg()?;
        for x in num.iter_mut() {
            *x = x.checked_neg()?;
        }
    }
    let mut g = den;
    for &x in &num {
        if g == 1 {
            break;
        }
        g = g.gcd(&x);
    }
    if g != 1 {
        den /= g;
        for x in num.iter_mut() {
            *x /= g;
        }
    }
    let d = i64::try_from(den).ok();
    let n = [
        i64::try_from(num[0]).ok(),
        i64::try_from(num[1]).ok(),
        i64::try_from(num[2]).ok(),
        i64::try_from(num[3]).ok(),
    ];
    match (d, n) {
        (Some(d), [Some(a), Some(b), Some(c), Some(e)]) => {
            Some(FieldElement(Repr::Small([a, b, c, e], d)))
        }
        _ => Some(finish_big(num.map(BigInt::from), BigInt::from(den))),
    }
}

fn finish_big(mut num: [BigInt; 4], mut den: BigInt) -> FieldElement {
    if num.iter().all(|x| x.is_zero()) {
        return FieldElement::zero();
    }
    if den.is_negative() {
        den = -den;
        for x in num.iter_mut() {
            *x = -&*x;
        }
    }
    let mut g = den.clone();
    for x in &num {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if !g.is_one() {
        den /= &g;
        for x in num.iter_mut() {
            *x /= &g;
        }
    }
    let small = (
        den.to_i64(),
        num[0].to_i64(),
        num[1].to_i64(),
        num[2].to_i64(),
        num[3].to_i64(),
    );
    if let (Some(d), Some(a), Some(b), Some(c), Some(e)) = small {
        return FieldElement(Repr::Small([a, b, c, e], d));
    }
    FieldElement(Repr::Big(Box::new(BigParts { num, den })))
}

fn mul_parts<T>(x: &[T; 4], y: &[T; 4], three: impl Fn(T) -> Option<T>) -> Option<[T; 4]>
where
    T: Clone + CheckedRing,
{
    let m = |p: &T, q: &T| p.cmul(q);
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    let a = m(a1, a2)?
        .cadd(&three(m(b1, b2)?)?)?
        .csub(&m(c1, c2)?)?
        .csub(&three(m(d1, d2)?)?)?;
    let b = m(a1, b2)?
        .cadd(&m(b1, a2)?)?
        .csub(&m(c1, d2)?)?
        .csub(&m(d1, c2)?)?;
    let c = m(a1, c2)?
        .cadd(&three(m(b1, d2)?)?)?
        .cadd(&m(c1, a2)?)?
        .cadd(&three(m(d1, b2)?)?)?;
    let d = m(a1, d2)?
        .cadd(&m(b1, c2)?)?
        .cadd(&m(c1, b2)?)?
        .cadd(&m(d1, a2)?)?;
    Some([a, b, c, d])
}

trait CheckedRing: Sized {
    fn cadd(&self, o: &Self) -> Option<Self>;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cmul(&self, o: &Self) -> Option<Self>;
}

impl CheckedRing for i128 {
    fn cadd(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl CheckedRing for BigInt {
    fn cadd(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement(Repr::Small([0; 4], 1))
    }

    pub fn one() -> Self {
        FieldElement(Repr::Small([1, 0, 0, 0], 1))
    }

    pub fn i() -> Self {
        FieldElement(Repr::Small([0, 0, 1, 0], 1))
    }

    pub fn sqrt3() -> Self {
        FieldElement(Repr::Small([0, 1, 0, 0], 1))
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElement(Repr::Small([n, 0, 0, 0], 1))
    }

    /// The rational `n/d`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        finish_i128([n as i128, 0, 0, 0], d as i128).expect("fits")
    }

    /// Builds `a + b√3 + c·i + d·i√3` from integer numerators over a common denominator.
    pub fn from_parts(num: [i64; 4], den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        finish_i128(num.map(i128::from), den as i128).expect("fits")
    }

    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        let comps = [a, b, c, d];
        let mut den = BigInt::one();
        for r in &comps {
            den = den.lcm(r.denom());
        }
        let num = comps.map(|r| r.numer() * (&den / r.denom()));
        finish_big(num, den)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    fn big_parts(&self) -> ([BigInt; 4], BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (n.map(BigInt::from), BigInt::from(*d)),
            Repr::Big(b) => (b.num.clone(), b.den.clone()),
        }
    }

    fn component(&self, k: usize) -> Rational {
        let (num, den) = self.big_parts();
        Rational::from_big(BigRational::new(num[k].clone(), den))
    }

    /// Rational part.
    pub fn a(&self) -> Rational {
        self.component(0)
    }
    /// Coefficient of √3.
    pub fn b(&self) -> Rational {
        self.component(1)
    }
    /// Coefficient of i.
    pub fn c(&self) -> Rational {
        self.component(2)
    }
    /// Coefficient of i√3.
    pub fn d(&self) -> Rational {
        self.component(3)
    }

    pub fn components(&self) -> [Rational; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small([0, 0, 0, 0], _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small([1, 0, 0, 0], 1))
    }

    /// True when the element lies in ℚ(√3), i.e. is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => n[2] == 0 && n[3] == 0,
            Repr::Big(b) => b.num[2].is_zero() && b.num[3].is_zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => n[1] == 0 && n[2] == 0 && n[3] == 0,
            Repr::Big(b) => b.num[1..].iter().all(|x| x.is_zero()),
        }
    }

    /// Whether the word-sized representation is in use.
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }

    /// Complex conjugation: i ↦ −i, √3 ↦ √3.
    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                finish_i128([n[0] as i128, n[1] as i128, -(n[2] as i128), -(n[3] as i128)], *d as i128)
                    .expect("fits")
            }
            Repr::Big(b) => {
                let [a, bb, c, d] = b.num.clone();
                finish_big([a, bb, -c, -d], b.den.clone())
            }
        }
    }

    /// The Galois automorphism √3 ↦ −√3 fixing i.
    fn conj_sqrt3(&self) -> Self {
        let (n, d) = self.big_parts();
        let [a, b, c, e] = n;
        finish_big([a, -b, c, -e], d)
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x·conj(x) lies in ℚ(√3); multiplying by its √3-conjugate lands in ℚ.
        let xc = self.conj();
        let n1 = self * &xc;
        let n1c = n1.conj_sqrt3();
        let n2 = &n1 * &n1c;
        let (num, den) = n2.big_parts();
        let q = BigRational::new(den, num[0].clone());
        Ok(&(&xc * &n1c) * &Self::from_rational(Rational::from_big(q)))
    }

    pub fn to_complex_float(&self) -> Complex64 {
        let [a, b, c, d] = self.components().map(|r| r.to_f64());
        Complex64::new(a + b * SQRT3, c + d * SQRT3)
    }

    /// Exact sign of the real part `a + b√3`.
    pub fn real_sign(&self) -> Ordering {
        sign_of(&self.a(), &self.b())
    }

    /// Exact sign of the imaginary part `c + d√3`.
    pub fn imag_sign(&self) -> Ordering {
        sign_of(&self.c(), &self.d())
    }

    /// Recognises a complex float as `a + b√3 + (c + d√3)i` with small denominators.
    pub fn recognize(z: Complex64, max_den: i64, tol: f64) -> Option<Self> {
        let re = recognize_real(z.re, max_den, tol)?;
        let im = recognize_real(z.im, max_den, tol)?;
        Some(&re + &(&im * &Self::i()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }
}

fn sign_of(a: &Rational, b: &Rational) -> Ordering {
    let sa = a.as_big().cmp(&BigRational::zero());
    let sb = b.as_big().cmp(&BigRational::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // Opposite signs: compare a² with 3b².
    let a2 = a.as_big() * a.as_big();
    let b2 = b.as_big() * b.as_big() * BigRational::from_integer(BigInt::from(3));
    match a2.cmp(&b2) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

fn recognize_real(x: f64, max_den: i64, tol: f64) -> Option<FieldElement> {
    let bound = (x.abs() / SQRT3).ceil() as i64 + 2;
    for den in 1..=max_den {
        for bn in -bound * den..=bound * den {
            let b = bn as f64 / den as f64;
            let rest = (x - b * SQRT3) * den as f64;
            let an = rest.round();
            if (rest - an).abs() < tol * den as f64 {
                return Some(FieldElement::from_parts([an as i64, bn, 0, 0], den));
            }
        }
    }
    None
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if let (Repr::Small(n1, d1), Repr::Small(n2, d2)) = (&self.0, &o.0) {
            let fast = if d1 == d2 {
                let num = [0, 1, 2, 3].map(|k| n1[k] as i128 + n2[k] as i128);
                finish_i128(num, *d1 as i128)
            } else {
                let (d1, d2) = (*d1 as i128, *d2 as i128);
                let mut num = [0i128; 4];
                let mut ok = true;
                for k in 0..4 {
                    match (n1[k] as i128 * d2).checked_add(n2[k] as i128 * d1) {
                        Some(v) => num[k] = v,
                        None => ok = false,
                    }
                }
                if ok {
                    finish_i128(num, d1 * d2)
                } else {
                    None
                }
            };
            if let Some(r) = fast {
                return r;
            }
        }
        let (n1, d1) = self.big_parts();
        let (n2, d2) = o.big_parts();
        let num = [0, 1, 2, 3].map(|k| &n1[k] * &d2 + &n2[k] * &d1);
        finish_big(num, d1 * d2)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        if self.is_zero() || o.is_zero() {
            return FieldElement::zero();
        }
        if let (Repr::Small(n1, d1), Repr::Small(n2, d2)) = (&self.0, &o.0) {
            let x = n1.map(i128::from);
            let y = n2.map(i128::from);
            if let Some(num) = mul_parts(&x, &y, |t: i128| t.checked_mul(3)) {
                if let Some(r) = finish_i128(num, *d1 as i128 * *d2 as i128) {
                    return r;
                }
            }
        }
        let (n1, d1) = self.big_parts();
        let (n2, d2) = o.big_parts();
        let num = mul_parts(&n1, &n2, |t: BigInt| Some(t * 3)).expect("bigint");
        finish_big(num, d1 * d2)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Small(n, d) => finish_i128(n.map(|x| -(x as i128)), *d as i128).expect("fits"),
            Repr::Big(b) => finish_big(b.num.clone().map(|x| -x), b.den.clone()),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self + &(-o)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::inv`] for a fallible inverse.
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &FieldElement) {
        *self = &*self + o;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &FieldElement) {
        *self = &*self - o;
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let suffix = ["", "√3", "i", "i√3"];
        let mut first = true;
        for (k, r) in self.components().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let abs = if neg { -r } else { r.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coeff = if abs.denom().is_one() {
                if abs.numer().is_one() && k > 0 {
                    String::new()
                } else {
                    abs.numer().to_string()
                }
            } else {
                abs.to_string()
            };
            write!(f, "{sign}{coeff}{}", suffix[k])?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.components()
            .map(|r| r.to_string())
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts: [String; 4] = Deserialize::deserialize(d)?;
        let mut rs = Vec::with_capacity(4);
        for p in &parts {
            rs.push(p.parse::<Rational>().map_err(D::Error::custom)?);
        }
        let [a, b, c, e]: [Rational; 4] = rs.try_into().expect("four components");
        Ok(FieldElement::new(a, b, c, e))
    }
}

impl FromStr for FieldElement {
    type Err = Error;

    /// Parses arithmetic expressions such as `(√3 - i)/2`, `-3/4 + 2i√3` or `1-s3*i`.
    ///
    /// Atoms are integers, `i`, and `√3` (also spelled `s3` or `sqrt3`); juxtaposition multiplies.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = ExprParser { src: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.src.len() {
            return Err(p.err());
        }
        Ok(v)
    }
}

struct ExprParser {
    src: Vec<char>,
    pos: usize,
}

impl ExprParser {
    fn err(&self) -> Error {
        let s: String = self.src.iter().collect();
        Error::Parse(format!("invalid field element `{s}` at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FieldElement, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' | '−' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = &acc * &d.inv()?;
                }
                Some(c) if c.is_ascii_digit() || c == '(' || c == 'i' || c == '√' || c == 's' => {
                    acc = &acc * &self.atom()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElement, Error> {
        match self.peek() {
            Some('-') | Some('−') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn eat(&mut self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        if self.src[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<FieldElement, Error> {
        let c = self.peek().ok_or_else(|| self.err())?;
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let s: String = self.src[start..self.pos].iter().collect();
            let n: BigInt = s.parse().map_err(|_| self.err())?;
            return Ok(FieldElement::from_rational(Rational::from_integer(n)));
        }
        if c == '(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(')') {
                return Err(self.err());
            }
            self.pos += 1;
            return Ok(v);
        }
        if self.eat("√3") || self.eat("sqrt3") || self.eat("s3") {
            return Ok(FieldElement::sqrt3());
        }
        if self.eat("i") {
            return Ok(FieldElement::i());
        }
        Err(self.err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_defining_relations() {
        let x = fe("3/4 - 2√3 + 5i - i√3/7");
        assert_eq!(&FieldElement::one() * &x, x);
        assert_eq!(&FieldElement::sqrt3() * &FieldElement::sqrt3(), FieldElement::from_i64(3));
        assert_eq!(&FieldElement::i() * &FieldElement::i(), FieldElement::from_i64(-1));
    }

    #[test]
    fn conjugate_pair_product_is_one() {
        let p = fe("(√3+i)/2");
        let q = fe("(√3-i)/2");
        assert_eq!(&p * &q, FieldElement::one());
        assert_eq!(q.conj(), p);
    }

    #[test]
    fn inverses() {
        assert_eq!(FieldElement::one().inv().unwrap(), FieldElement::one());
        assert_eq!(FieldElement::i().inv().unwrap(), -FieldElement::i());
        assert_eq!(fe("1+√3").inv().unwrap(), fe("(-1+√3)/2"));
        assert!(matches!(FieldElement::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn float_bridge() {
        assert_eq!(FieldElement::one().to_complex_float(), Complex64::new(1.0, 0.0));
        let z = fe("i√3").to_complex_float();
        assert_eq!(z.re, 0.0);
        assert!((z.im - 3f64.sqrt()).abs() < 1e-15);
        let w = fe("(√3+i)/2").to_complex_float();
        assert!((w.re - 0.866_025_403_784_438_6).abs() < 1e-15);
        assert_eq!(w.im, 0.5);
    }

    #[test]
    fn json_encoding() {
        let x = fe("(√3+i)/2");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["0/1","1/2","1/2","0/1"]"#);
        let back: FieldElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        let big = FieldElement::from_i64(i64::MAX);
        let sq = &big * &big;
        assert!(!sq.is_small());
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(back.is_small());
        let tiny = FieldElement::ratio(1, i64::MAX);
        let s = &tiny + &FieldElement::ratio(1, i64::MAX - 1);
        assert_eq!(&(&s - &tiny) * &FieldElement::from_i64(i64::MAX - 1), FieldElement::one());
    }

    #[test]
    fn signs_are_exact() {
        assert_eq!(fe("2 - √3").real_sign(), Ordering::Greater);
        assert_eq!(fe("1 - √3").real_sign(), Ordering::Less);
        assert_eq!(fe("-5i + 3i√3").imag_sign(), Ordering::Greater);
        assert_eq!(fe("7").imag_sign(), Ordering::Equal);
    }

    #[test]
    fn recognition() {
        let x = fe("-√3/2 + 3i/4");
        let z = x.to_complex_float();
        assert_eq!(FieldElement::recognize(z, 12, 1e-9), Some(x));
    }

    #[test]
    fn display() {
        assert_eq!(fe("(√3+i)/2").to_string(), "1/2√3 + 1/2i");
        assert_eq!(fe("-1 + i√3").to_string(), "-1 + i√3");
        assert_eq!(fe("2√3").to_string(), "2√3");
    }
}
