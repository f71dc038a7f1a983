//! Concrete groups as permutation groups: linear groups over small fields,
//! the projective line tower and alternating groups.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use crate::error::{FswError, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// `GF(p^e)`, elements encoded as base-`p` coefficient vectors.
#[derive(Clone, Debug)]
pub struct Field {
    pub p: usize,
    pub e: u32,
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// A generator of the multiplicative group.
    pub primitive: usize,
}

/// Irreducible polynomials for the prime-power fields used here, as
/// coefficients of `x^e = c_0 + c_1 x + …` (the reduction rule).
fn reduction(p: usize, e: u32) -> Option<Vec<usize>> {
    Some(match (p, e) {
        (_, 1) => vec![0],
        // x^2 + 1
        (3, 2) => vec![2, 0],
        // x^3 + 2x + 1
        (3, 3) => vec![2, 1, 0],
        // x^4 + 2x^3 + 2
        (3, 4) => vec![1, 0, 0, 1],
        // x^2 + 2
        (5, 2) => vec![3, 0],
        // x^2 + 1
        (7, 2) => vec![6, 0],
        _ => return None,
    })
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        let bad = || FswError::Invalid(format!("unsupported field order {q}"));
        if !(2..=81).contains(&q) {
            return Err(bad());
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut e = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            e += 1;
        }
        if r != 1 || !is_prime(p) {
            return Err(bad());
        }
        let red = reduction(p, e).ok_or_else(bad)?;
        let digits = |x: usize| -> Vec<usize> { (0..e).map(|i| (x / p.pow(i)) % p).collect() };
        let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = (0..e as usize).map(|i| (da[i] + db[i]) % p).collect();
                add[a * q + b] = encode(&s) as u8;
                // schoolbook product then reduce from the top degree down
                let mut prod = vec![0usize; 2 * e as usize];
                for i in 0..e as usize {
                    for j in 0..e as usize {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (e as usize..2 * e as usize).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &r) in red.iter().enumerate() {
                        let k = deg - e as usize + i;
                        prod[k] = (prod[k] + c * r) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..e as usize]) as u8;
            }
        }
        let mut f = Field { p, e, q, add, mul, neg: vec![0; q], inv: vec![0; q], primitive: 0 };
        for a in 0..q {
            f.neg[a] = (0..q).find(|&b| f.add(a, b) == 0).unwrap() as u8;
            if a != 0 {
                f.inv[a] = (1..q).find(|&b| f.mul(a, b) == 1).ok_or_else(bad)? as u8;
            }
        }
        f.primitive = (2..q).find(|&a| f.mult_order(a) == q - 1).unwrap_or(1);
        if q > 2 && f.mult_order(f.primitive) != q - 1 {
            return Err(FswError::Invalid(format!("reduction rule for GF({q}) is not irreducible")));
        }
        Ok(f)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut n: usize) -> usize {
        let mut r = 1;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    pub fn mult_order(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The Frobenius automorphism `x ↦ x^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }
}

type Matrix = Vec<Vec<usize>>;

fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect()
}

/// Row vector times matrix.
fn apply(f: &Field, v: &[usize], m: &Matrix) -> Vec<usize> {
    let n = v.len();
    (0..n)
        .map(|j| (0..n).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i][j]))))
        .collect()
}

fn normalize(f: &Field, v: &[usize]) -> Vec<usize> {
    let lead = *v.iter().find(|&&x| x != 0).unwrap();
    let s = f.inv(lead);
    v.iter().map(|&x| f.mul(x, s)).collect()
}

fn all_vectors(q: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            for x in 0..q {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Projective points (first nonzero coordinate 1) or nonzero vectors,
/// sorted.
fn point_set(f: &Field, n: usize, projective: bool) -> Vec<Vec<usize>> {
    let mut pts: Vec<Vec<usize>> = all_vectors(f.q, n)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| !projective || v[v.iter().position(|&x| x != 0).unwrap()] == 1)
        .collect();
    pts.sort();
    pts
}

struct PointAction<'a> {
    f: &'a Field,
    projective: bool,
    pts: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl<'a> PointAction<'a> {
    fn new(f: &'a Field, n: usize, projective: bool) -> Self {
        let pts = point_set(f, n, projective);
        let index = pts.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        PointAction { f, projective, pts, index }
    }

    fn perm_by(&self, map: impl Fn(&[usize]) -> Vec<usize>) -> Perm {
        let img = self
            .pts
            .iter()
            .map(|v| {
                let w = map(v);
                let w = if self.projective { normalize(self.f, &w) } else { w };
                self.index[&w]
            })
            .collect();
        Perm::from_images(img).unwrap()
    }

    fn matrix(&self, m: &Matrix) -> Perm {
        self.perm_by(|v| apply(self.f, v, m))
    }

    fn frobenius(&self) -> Perm {
        self.perm_by(|v| v.iter().map(|&x| self.f.frobenius(x)).collect())
    }
}

fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn verified(g: PermGroup, order: u128) -> Result<PermGroup> {
    if g.order() != order {
        return Err(FswError::Precondition(format!("constructed group has order {}, expected {order}", g.order())));
    }
    Ok(g)
}

/// Maximum number of points for the linear-group actions.
pub const LINEAR_DEGREE_CAP: usize = 1000;

/// `(P)(S)L_n(q)` acting on projective points or on nonzero vectors.
///
/// Generated by the elementary transvections `1 + λE_{ij}` for `λ` in a
/// basis of the field, a diagonal `diag(ω, ω^{-1}, 1, …)` and, when not
/// special, `diag(ω, 1, …)`.
pub fn linear_group(n: usize, f: &Field, projective: bool, special: bool) -> Result<PermGroup> {
    if !(2..=4).contains(&n) {
        return Err(FswError::Invalid("dimension must be between 2 and 4".into()));
    }
    let q = f.q as u128;
    let count = if projective { (q.pow(n as u32) - 1) / (q - 1) } else { q.pow(n as u32) - 1 };
    if count > LINEAR_DEGREE_CAP as u128 {
        return Err(FswError::cap("linear group degree", LINEAR_DEGREE_CAP as u64));
    }
    let act = PointAction::new(f, n, projective);
    let mut gens = Vec::new();
    let basis: Vec<usize> = (0..f.e).map(|i| f.p.pow(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &l in &basis {
                let mut m = identity_matrix(n);
                m[i][j] = l;
                gens.push(act.matrix(&m));
            }
        }
    }
    let w = f.primitive;
    if f.q > 3 {
        let mut d = identity_matrix(n);
        d[0][0] = w;
        d[1][1] = f.inv(w);
        gens.push(act.matrix(&d));
    }
    if !special && f.q > 2 {
        let mut d = identity_matrix(n);
        d[0][0] = w;
        gens.push(act.matrix(&d));
    }
    gens.retain(|g| !g.is_identity());
    let mut order = gl_order(n as u32, q);
    if special {
        order /= q - 1;
    }
    if projective {
        order /= if special { gcd(n as u128, q - 1) } else { q - 1 };
    }
    let degree = act.pts.len();
    verified(PermGroup::with_order(degree, gens, order), order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineFamily {
    Psl2,
    Pgl2,
    Sl2,
    PGammaL2,
}

/// The groups between `SL_2(q)` and `PΓL_2(q)`: projective ones on the
/// `q+1` points of the line, `SL_2(q)` on the `q²−1` nonzero vectors.
pub fn projective_line_group(family: LineFamily, f: &Field) -> Result<PermGroup> {
    if f.p == 2 || f.q < 5 {
        return Err(FswError::Invalid(format!("unsupported q = {}", f.q)));
    }
    match family {
        LineFamily::Psl2 => linear_group(2, f, true, true),
        LineFamily::Pgl2 => linear_group(2, f, true, false),
        LineFamily::Sl2 => linear_group(2, f, false, true),
        LineFamily::PGammaL2 => {
            let pgl = linear_group(2, f, true, false)?;
            let act = PointAction::new(f, 2, true);
            let mut gens = pgl.gens().to_vec();
            let fr = act.frobenius();
            if !fr.is_identity() {
                gens.push(fr);
            }
            let order = pgl.order() * f.e as u128;
            verified(PermGroup::with_order(pgl.degree(), gens, order), order)
        }
    }
}

/// The Frobenius permutation of the projective line over `f`.
pub fn line_frobenius(f: &Field) -> Perm {
    PointAction::new(f, 2, true).frobenius()
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if !(3..=12).contains(&n) {
        return Err(FswError::Invalid("alternating groups are supported for 3 ≤ n ≤ 12".into()));
    }
    let three = Perm::from_images((0..n).map(|i| [1, 2, 0].get(i).copied().unwrap_or(i)).collect()).unwrap();
    // (1,…,n) for odd n, (2,…,n) for even n
    let long = if n % 2 == 1 {
        Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap()
    } else {
        Perm::from_images((0..n).map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 }).collect()).unwrap()
    };
    let order: u128 = (1..=n as u128).product::<u128>() / 2;
    verified(PermGroup::with_order(n, vec![three, long], order), order)
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if !(2..=12).contains(&n) {
        return Err(FswError::Invalid("symmetric groups are supported for 2 ≤ n ≤ 12".into()));
    }
    let cyc = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let tr = Perm::from_images((0..n).map(|i| [1, 0].get(i).copied().unwrap_or(i)).collect()).unwrap();
    let order = (1..=n as u128).product();
    verified(PermGroup::with_order(n, vec![cyc, tr], order), order)
}

/// Names accepted by [`atlas_lookup`].
pub const ATLAS_NAMES: &[&str] = &[
    "PSL4_3", "PGL4_3", "A10", "A6", "S4", "PSL2_7", "PSL2_9", "PSL2_17", "SL2_7", "SL2_9", "PGL2_9",
    "PGammaL2_9", "PSL3_3",
];

fn build(name: &str) -> Result<PermGroup> {
    let unknown = || FswError::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if let Some(n) = name.strip_prefix('A').filter(|s| s.chars().all(|c| c.is_ascii_digit())) {
        return alternating(num(n)?);
    }
    if let Some(n) = name.strip_prefix('S').filter(|s| s.chars().all(|c| c.is_ascii_digit())) {
        return symmetric(num(n)?);
    }
    let (fam, rest) = name.split_once('_').ok_or_else(unknown)?;
    let q = num(rest)?;
    let f = Field::new(q)?;
    match fam {
        "PSL2" => projective_line_group(LineFamily::Psl2, &f),
        "PGL2" => projective_line_group(LineFamily::Pgl2, &f),
        "SL2" => projective_line_group(LineFamily::Sl2, &f),
        "PGammaL2" => projective_line_group(LineFamily::PGammaL2, &f),
        "PSL3" => linear_group(3, &f, true, true),
        "PGL3" => linear_group(3, &f, true, false),
        "PSL4" => linear_group(4, &f, true, true),
        "PGL4" => linear_group(4, &f, true, false),
        _ => Err(unknown()),
    }
}

fn cache() -> &'static Mutex<HashMap<String, PermGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<String, PermGroup>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn disk_path(name: &str) -> Option<PathBuf> {
    std::env::var_os("FSW_CACHE_DIR").map(|d| PathBuf::from(d).join(format!("{name}.perm")))
}

/// Named group with verified order. Results are cached in memory and, when
/// `FSW_CACHE_DIR` is set, as generator files on disk.
pub fn atlas_lookup(name: &str) -> Result<PermGroup> {
    if let Some(g) = cache().lock().unwrap().get(name) {
        return Ok(g.clone());
    }
    let built = build(name)?;
    let g = match disk_path(name).and_then(|p| std::fs::read_to_string(p).ok()) {
        Some(text) => match PermGroup::parse(&text) {
            Ok(g) if g.order() == built.order() && g.gens().iter().all(|x| built.contains(x)) => g,
            _ => built,
        },
        None => {
            if let Some(p) = disk_path(name) {
                let _ = std::fs::create_dir_all(p.parent().unwrap());
                let _ = std::fs::write(p, built.to_text());
            }
            built
        }
    };
    cache().lock().unwrap().insert(name.to_string(), g.clone());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_have_cyclic_unit_groups() {
        for q in [3, 5, 7, 9, 17, 25, 27, 49, 81] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.mult_order(f.primitive), q - 1, "q = {q}");
            // Frobenius is additive and multiplicative
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
        assert!(Field::new(6).is_err());
        assert!(Field::new(121).is_err());
    }

    #[test]
    fn small_orders() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(linear_group(2, &f3, true, true).unwrap().order(), 12);
        assert_eq!(alternating(3).unwrap().order(), 3);
        assert_eq!(symmetric(4).unwrap().order(), 24);
    }
}
