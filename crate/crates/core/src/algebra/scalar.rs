//! Coefficient fields: exact rationals, and fractions of residue classes
//! `Frac(K[y]/J)` used as the function field of an irreducible variety.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::groebner::GroebnerBasis;
use super::poly::Poly;
use super::AlgebraError;

/// A commutative field with exact arithmetic.
///
/// Methods take references so that big coefficients are not cloned on
/// every operation.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, AlgebraError>;
    fn from_q(q: &Q) -> Self;

    fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    fn from_i64(v: i64) -> Self {
        Self::from_q(&Q::from(v))
    }

    /// The rational value, when the element is one.
    fn to_q(&self) -> Option<Q>;
}

/// Arbitrary-precision rational number. Values whose numerator and
/// denominator fit in an `i64` are kept unboxed.
#[derive(Clone, PartialEq, Eq)]
pub struct Q(Repr);

/// Canonical: `Small` whenever the reduced fraction fits, with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        Q::from_i128(num as i128, den as i128)
    }

    /// Reduce `n / d` for `d ≠ 0`.
    fn from_i128(n: i128, d: i128) -> Q {
        assert!(d != 0, "zero denominator");
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n == 0 {
            return Q(Repr::Small(0, 1));
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        let (n, d) = (n / g, d / g);
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q(Repr::Small(n, d)),
            _ => Q(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_ratio(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q(Repr::Small(n, d)),
            _ => Q(Repr::Big(r)),
        }
    }

    fn ratio(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Q {
        Q::from_ratio(BigRational::new(num, den))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            Field::neg(self)
        } else {
            self.clone()
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut r = Q::one();
        for _ in 0..e {
            r = Field::mul(&r, self);
        }
        r
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Exact rational square root, if there is one.
    pub fn sqrt(&self) -> Option<Q> {
        if self.is_negative() {
            return None;
        }
        let (num, den) = (self.numer(), self.denom());
        let n = num.sqrt();
        let d = den.sqrt();
        if &n * &n == num && &d * &d == den {
            Some(Q::from_big(n, d))
        } else {
            None
        }
    }

    /// Parse `p` or `p/q`.
    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::from_big(a, b))
        } else {
            let a: BigInt = s.parse().ok()?;
            Some(Q::from(a))
        }
    }

    pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Q>) -> BigInt {
        it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(&q.denom()))
    }
}

impl Default for Q {
    fn default() -> Q {
        Q(Repr::Small(0, 1))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.ratio().cmp(&other.ratio()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(r) => {
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Q {
        Q(Repr::Small(v, 1))
    }
}

impl From<BigInt> for Q {
    fn from(v: BigInt) -> Q {
        Q::from_ratio(BigRational::from_integer(v))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(Repr::Small(0, 1))
    }
    fn one() -> Self {
        Q(Repr::Small(1, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
    fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    return Q::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b)) {
                    (Some(x), Some(y)) => Q::from_i128(x + y, b * d),
                    _ => Q::from_ratio(self.ratio() + other.ratio()),
                }
            }
            _ => Q::from_ratio(self.ratio() + other.ratio()),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Q::from_ratio(self.ratio() * other.ratio()),
        }
    }
    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) if *n != i64::MIN => Q(Repr::Small(-n, *d)),
            _ => Q::from_ratio(-self.ratio()),
        }
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::RingContext("division by zero rational".into()));
        }
        Ok(match &self.0 {
            Repr::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Q::from_ratio(r.recip()),
        })
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn to_q(&self) -> Option<Q> {
        Some(self.clone())
    }
}

/// The fixed data of a function field `Frac(K[y_1..y_m]/J)` with `J` prime.
#[derive(Debug)]
pub struct OmegaContext {
    pub names: Vec<String>,
    pub ideal: GroebnerBasis<Q>,
}

impl OmegaContext {
    /// `J` must be prime; the flag is the caller's certificate (computed or
    /// asserted) and is required rather than checked here.
    pub fn new(
        names: Vec<String>,
        prime_gens: &[Poly<Q>],
        certified_prime: bool,
    ) -> Result<Arc<OmegaContext>, AlgebraError> {
        if !certified_prime {
            return Err(AlgebraError::RingContext(
                "function field requires a prime ideal with a primality certificate".into(),
            ));
        }
        let nvars = names.len();
        let ideal = GroebnerBasis::new(
            prime_gens.to_vec(),
            super::order::MonomialOrder::DegRevLex,
            nvars,
        );
        if ideal.is_unit() {
            return Err(AlgebraError::RingContext("the unit ideal is not prime".into()));
        }
        Ok(Arc::new(OmegaContext { names, ideal }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// The class of the `i`-th coordinate `y_i + J`.
    pub fn generator(self: &Arc<Self>, i: usize) -> Omega {
        Omega::from_poly(self, Poly::var(self.nvars(), i))
    }
}

/// Element of `Frac(K[y]/J)`: numerator and denominator are kept in normal
/// form modulo `J`. Elements without a context are plain rationals.
#[derive(Clone)]
pub struct Omega {
    ctx: Option<Arc<OmegaContext>>,
    num: Poly<Q>,
    den: Poly<Q>,
}

impl Omega {
    pub fn from_poly(ctx: &Arc<OmegaContext>, p: Poly<Q>) -> Omega {
        let num = ctx.ideal.normal_form(&p);
        Omega {
            ctx: Some(ctx.clone()),
            den: Poly::constant(ctx.nvars(), Q::one()),
            num,
        }
    }

    pub fn fraction(ctx: &Arc<OmegaContext>, num: Poly<Q>, den: Poly<Q>) -> Result<Omega, AlgebraError> {
        let den = ctx.ideal.normal_form(&den);
        if den.is_zero() {
            return Err(AlgebraError::RingContext("denominator vanishes modulo the prime ideal".into()));
        }
        let num = ctx.ideal.normal_form(&num);
        Ok(Omega { ctx: Some(ctx.clone()), num, den }.simplified())
    }

    pub fn context(&self) -> Option<&Arc<OmegaContext>> {
        self.ctx.as_ref()
    }

    pub fn numerator(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Q> {
        &self.den
    }

    fn rational(q: Q) -> Omega {
        Omega { ctx: None, num: Poly::constant(0, q), den: Poly::constant(0, Q::one()) }
    }

    fn lift(&self, ctx: &Arc<OmegaContext>) -> (Poly<Q>, Poly<Q>) {
        if self.ctx.is_some() {
            (self.num.clone(), self.den.clone())
        } else {
            let n = ctx.nvars();
            (
                Poly::constant(n, self.num.constant_coeff()),
                Poly::constant(n, self.den.constant_coeff()),
            )
        }
    }

    fn common_ctx(&self, other: &Omega) -> Option<Arc<OmegaContext>> {
        match (&self.ctx, &other.ctx) {
            (Some(a), Some(b)) => {
                debug_assert!(Arc::ptr_eq(a, b), "mixing function fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn build(ctx: Option<Arc<OmegaContext>>, num: Poly<Q>, den: Poly<Q>) -> Omega {
        match ctx {
            None => {
                let q = Field::mul(&num.constant_coeff(), &den.constant_coeff().inv().expect("nonzero"));
                Omega::rational(q)
            }
            Some(c) => {
                let num = c.ideal.normal_form(&num);
                let den = c.ideal.normal_form(&den);
                Omega { ctx: Some(c), num, den }.simplified()
            }
        }
    }

    fn simplified(mut self) -> Omega {
        if self.num.is_zero() {
            let n = self.num.nvars();
            self.den = Poly::constant(n, Q::one());
            return self;
        }
        if self.den.is_constant() {
            let c = self.den.constant_coeff();
            if !c.is_one() {
                let ci = c.inv().expect("nonzero denominator");
                self.num = self.num.scale(&ci);
                self.den = Poly::constant(self.den.nvars(), Q::one());
            }
            return self;
        }
        let pure_field = self.ctx.as_ref().map(|c| c.ideal.is_zero_ideal()).unwrap_or(true);
        if pure_field {
            let g = super::gcd::gcd(&self.num, &self.den);
            if !g.is_constant() {
                self.num = self.num.exact_div(&g).expect("gcd divides numerator");
                self.den = self.den.exact_div(&g).expect("gcd divides denominator");
            }
        }
        // normalise: leading coefficient of the denominator is one
        let lc = self.den.leading_coeff();
        if !lc.is_one() {
            let li = lc.inv().expect("nonzero");
            self.num = self.num.scale(&li);
            self.den = self.den.scale(&li);
        }
        self
    }
}

impl PartialEq for Omega {
    fn eq(&self, other: &Self) -> bool {
        Field::sub(self, other).is_zero()
    }
}

impl fmt::Debug for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = match &self.ctx {
            Some(c) => c.names.clone(),
            None => vec![],
        };
        if self.den.is_one() {
            write!(f, "{}", self.num.display(&names))
        } else {
            write!(f, "({})/({})", self.num.display(&names), self.den.display(&names))
        }
    }
}

impl Field for Omega {
    fn zero() -> Self {
        Omega::rational(Q::zero())
    }
    fn one() -> Self {
        Omega::rational(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn add(&self, other: &Self) -> Self {
        match self.common_ctx(other) {
            None => Omega::rational(Field::add(&self.to_q().unwrap(), &other.to_q().unwrap())),
            Some(c) => {
                let (an, ad) = self.lift(&c);
                let (bn, bd) = other.lift(&c);
                if ad == bd {
                    return Omega::build(Some(c), an.add(&bn), ad);
                }
                Omega::build(Some(c), an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
            }
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        match self.common_ctx(other) {
            None => Omega::rational(Field::mul(&self.to_q().unwrap(), &other.to_q().unwrap())),
            Some(c) => {
                let (an, ad) = self.lift(&c);
                let (bn, bd) = other.lift(&c);
                Omega::build(Some(c), an.mul(&bn), ad.mul(&bd))
            }
        }
    }
    fn neg(&self) -> Self {
        Omega { ctx: self.ctx.clone(), num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::RingContext("inverting zero in function field".into()));
        }
        Ok(Omega::build(self.ctx.clone(), self.den.clone(), self.num.clone()))
    }
    fn from_q(q: &Q) -> Self {
        Omega::rational(q.clone())
    }
    fn to_q(&self) -> Option<Q> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(Field::mul(&self.num.constant_coeff(), &self.den.constant_coeff().inv().ok()?))
        } else {
            None
        }
    }
}

impl PartialOrd for Omega {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}
