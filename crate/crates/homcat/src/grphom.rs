//! Homology and cohomology of finite groups with trivial coefficients.
//!
//! Everything runs on the normalized bar complex. Small cases are reduced
//! over Z with unit pivots and finished with dense abelian-group algebra;
//! large ones fall back to Smith valuations over Z/p^k for each prime
//! dividing the group order.

mod bar;
mod local;
mod reduce;


use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use bar::{BarComplex, BarConfig, SparseIntMatrix};
pub(crate) use local::{smith_valuations, Echelon, Local};

use crate::chains::{apply_functor, exact_at, homology_ker, ChainComplex};
use crate::derived::{cohomology, FunctorSpec};
use crate::fgab::{
    admits_surjection, from_cyclic_orders, kernel, prime_factors, tensor, AbMorphism, FgAbGroup, IntMatrix,
};
use crate::grp::{
    abelian_presentation, abelianisation, abelianisation_map, higgins_commutator, quotient_group, Extension,
    FiniteGroup, Subgroup,
};
use crate::{Error, Result};

/// Coefficients for group homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    Z,
    /// `Z/k`, `k ≥ 1`.
    Mod(u64),
}

impl Coeff {
    /// `"Z"` or `"Z/k"`.
    pub fn parse(s: &str) -> Result<Coeff> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Coeff::Z);
        }
        match s.strip_prefix("Z/").and_then(|k| k.parse::<u64>().ok()) {
            Some(0) => Ok(Coeff::Z),
            Some(k) => Ok(Coeff::Mod(k)),
            None => Err(Error::Shape(format!("unknown coefficients {s:?}"))),
        }
    }

    /// `k = 0` means Z.
    pub fn from_modulus(k: u64) -> Coeff {
        if k == 0 {
            Coeff::Z
        } else {
            Coeff::Mod(k)
        }
    }
}

// above this many columns in d_{n+1} the local route is used directly
const REDUCE_COLS: usize = 60_000;
const REDUCE_NNZ: usize = 4_000_000;

enum Route {
    Dense(reduce::Reduced),
    Local(BarComplex),
}

fn route(g: &FiniteGroup, n: usize, cfg: &BarConfig) -> Result<Route> {
    let bar = BarComplex::new(g, n + 1, cfg)?;
    if bar.dim(n + 1) <= REDUCE_COLS {
        let zero;
        let dn = if n == 0 {
            zero = SparseIntMatrix::from_columns(0, vec![Vec::new()])?;
            &zero
        } else {
            bar.d(n)
        };
        if let Ok(r) = reduce::reduce(dn, bar.d(n + 1), cfg.max_entry_bits, REDUCE_NNZ) {
            return Ok(Route::Dense(r));
        }
    }
    Ok(Route::Local(bar))
}

fn small_complex(r: &reduce::Reduced, n: usize) -> Result<ChainComplex> {
    let lo = n as i64 - 1;
    let c_lo = FgAbGroup::free(r.dn.rows());
    let c_mid = FgAbGroup::free(r.dn.cols());
    let c_hi = FgAbGroup::free(r.dn1.cols());
    let d_n = AbMorphism::new(&c_mid, &c_lo, r.dn.clone())?;
    let d_n1 = AbMorphism::new(&c_hi, &c_mid, r.dn1.clone())?;
    ChainComplex::new(lo, vec![c_lo, c_mid, c_hi], vec![d_n, d_n1])
}

fn canonical(g: &FgAbGroup) -> FgAbGroup {
    let (free, tors) = g.invariants();
    from_cyclic_orders(free, &tors)
}

fn primes_of(n: u64) -> Vec<u64> {
    prime_factors(&BigInt::from(n)).iter().map(|p| p.to_u64().unwrap()).collect()
}

fn p_adic(n: u64, p: u64) -> u32 {
    let (mut n, mut v) = (n, 0);
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Cyclic orders of `H_n(C ⊗ Z/p^e)` read off local Smith valuations.
fn local_mod_homology(bar: &BarComplex, n: usize, p: u64, e: u32) -> Vec<BigInt> {
    let ring = Local::new(p as u32, e);
    let m = bar.dim(n);
    let a = if n == 0 { Vec::new() } else { smith_valuations(bar.dim(n - 1), bar.d(n).columns(), ring) };
    let b = smith_valuations(m, bar.d(n + 1).columns(), ring);
    let free = m - a.len() - b.len();
    let pe = BigInt::from(p).pow(e);
    let mut out = vec![pe; free];
    for v in a.into_iter().chain(b).filter(|&v| v > 0) {
        out.push(BigInt::from(p).pow(v));
    }
    out
}

/// p-parts of `H_n(G; Z)` for `n ≥ 1`; the exponent divides `|G|`, so
/// valuations mod `p^(v_p|G| + 1)` see every torsion summand.
fn local_integral_homology(bar: &BarComplex, n: usize) -> Vec<BigInt> {
    let order = bar.group().order() as u64;
    let mut out = Vec::new();
    for p in primes_of(order) {
        let k = p_adic(order, p) + 1;
        let vals = smith_valuations(bar.dim(n), bar.d(n + 1).columns(), Local::new(p as u32, k));
        out.extend(vals.into_iter().filter(|&v| v > 0).map(|v| BigInt::from(p).pow(v)));
    }
    out
}

pub fn group_homology(g: &FiniteGroup, n: usize, coeff: Coeff) -> Result<FgAbGroup> {
    group_homology_with(g, n, coeff, &BarConfig::default())
}

/// `H_n(G; Z)` or `H_n(G; Z/k)` from the normalized bar complex.
pub fn group_homology_with(g: &FiniteGroup, n: usize, coeff: Coeff, cfg: &BarConfig) -> Result<FgAbGroup> {
    if n == 0 {
        return Ok(match coeff {
            Coeff::Z => FgAbGroup::free(1),
            Coeff::Mod(k) => FgAbGroup::cyclic(k as i64),
        });
    }
    match route(g, n, cfg)? {
        Route::Dense(r) => {
            let c = small_complex(&r, n)?;
            let c = match coeff {
                Coeff::Z => c,
                Coeff::Mod(k) => apply_functor(&FunctorSpec::tensor_cyclic(k as i64), &c)?,
            };
            Ok(canonical(&homology_ker(&c, n as i64)?.group))
        }
        Route::Local(bar) => match coeff {
            Coeff::Z => Ok(from_cyclic_orders(0, &local_integral_homology(&bar, n))),
            Coeff::Mod(k) => {
                let order = g.order() as u64;
                let mut tors = Vec::new();
                for p in primes_of(k) {
                    // |G| kills H_n for n ≥ 1
                    if order % p == 0 {
                        tors.extend(local_mod_homology(&bar, n, p, p_adic(k, p)));
                    }
                }
                Ok(from_cyclic_orders(0, &tors))
            }
        },
    }
}

/// Classical `H^n(G; A)` with `G` acting trivially on `A`.
pub fn classical_cohomology(g: &FiniteGroup, n: usize, a: &FgAbGroup, cfg: &BarConfig) -> Result<FgAbGroup> {
    if n == 0 {
        return Ok(a.clone());
    }
    match route(g, n, cfg)? {
        Route::Dense(r) => {
            let c = small_complex(&r, n)?;
            Ok(canonical(&cohomology(&c, a, n as i64)?))
        }
        Route::Local(bar) => {
            let order = g.order() as u64;
            let (free, tors) = a.invariants();
            let mut out = Vec::new();
            for t in tors {
                let t = t.to_u64().ok_or_else(|| Error::Budget("coefficient too large".into()))?;
                for p in primes_of(t) {
                    if order % p == 0 {
                        out.extend(local_mod_homology(&bar, n, p, p_adic(t, p)));
                    }
                }
            }
            if free > 0 && n >= 2 {
                // H^n(G; Z) ≅ torsion of H_{n-1}(G; Z)
                let h = group_homology_with(g, n - 1, Coeff::Z, cfg)?;
                for _ in 0..free {
                    out.extend(h.torsion().iter().cloned());
                }
            }
            Ok(from_cyclic_orders(0, &out))
        }
    }
}

/// `Ext^n(G, A)` in the indexing where `Ext^0(G, A) = Hom(ab G, A)`; this is
/// classical `H^{n+1}(G; A)`.
pub fn group_cohomology(g: &FiniteGroup, n: usize, a: &FgAbGroup) -> Result<FgAbGroup> {
    classical_cohomology(g, n + 1, a, &BarConfig::default())
}

/// `L_n` of the exponent-`k` abelianisation at `G`: `ab(G) ⊗ Z/k` for
/// `n = 0` and `H_{n+1}(G; Z/k)` above (`k = 0` means no exponent bound).
pub fn derived_reflector(g: &FiniteGroup, n: usize, k: u64) -> Result<FgAbGroup> {
    derived_reflector_with(g, n, k, &BarConfig::default())
}

pub fn derived_reflector_with(g: &FiniteGroup, n: usize, k: u64, cfg: &BarConfig) -> Result<FgAbGroup> {
    if n == 0 {
        let ab = abelianisation(g).group;
        let t = if k == 0 { ab } else { tensor(&ab, &FgAbGroup::cyclic(k as i64)) };
        return Ok(canonical(&t));
    }
    group_homology_with(g, n + 1, Coeff::from_modulus(k), cfg)
}

/// Low-degree tail `H_2(Y) → K/[K,X] → ab(X) → ab(Y) → 0` of an extension
/// `K ↪ X ↠ Y`.
#[derive(Clone, Debug)]
pub struct StallingsReport {
    /// `K/[K, X]`.
    pub l0: FgAbGroup,
    pub gamma: AbMorphism,
    pub f_star: AbMorphism,
    pub h2_base: FgAbGroup,
    pub ker_gamma: FgAbGroup,
    pub exact_at_ab: bool,
    pub f_star_onto: bool,
    pub h2_covers_kernel: bool,
}

impl StallingsReport {
    pub fn passed(&self) -> bool {
        self.exact_at_ab && self.f_star_onto && self.h2_covers_kernel
    }
}

pub fn stallings_tail(e: &Extension) -> Result<StallingsReport> {
    let x = &e.e;
    let k_sub = e.pi.kernel();
    let kx = higgins_commutator(x, &k_sub, &Subgroup::whole(x));
    let (kg, incl) = k_sub.as_group();
    let pulled: Vec<usize> = kg.elements().filter(|&a| kx.contains(incl.apply(a))).collect();
    let (q, proj) = quotient_group(&kg, &Subgroup::new(&kg, &pulled)?)?;
    let (l0, _) = abelian_presentation(&q);
    let ab_x = abelianisation(x);
    let ab_y = abelianisation(&e.x);
    let images: Vec<_> = q
        .generators()
        .iter()
        .map(|&c| {
            let a = kg.elements().find(|&a| proj.apply(a) == c).unwrap();
            ab_x.unit[incl.apply(a)].clone()
        })
        .collect();
    let gamma = AbMorphism::from_images(&l0, &ab_x.group, &images)?;
    let f_star = abelianisation_map(&e.pi, &ab_x, &ab_y)?;
    let h2_base = group_homology(&e.x, 2, Coeff::Z)?;
    let (ker_gamma, _) = kernel(&gamma);
    Ok(StallingsReport {
        exact_at_ab: exact_at(&gamma, &f_star),
        f_star_onto: f_star.is_epi(),
        h2_covers_kernel: admits_surjection(&h2_base, &ker_gamma),
        l0: canonical(&l0),
        gamma,
        f_star,
        h2_base,
        ker_gamma,
    })
}

/// Agreement of normalized and unnormalized bar complexes.
#[derive(Clone, Debug)]
pub struct BarSelfCheck {
    pub dd_zero: bool,
    pub normalized: Vec<FgAbGroup>,
    pub unnormalized: Vec<FgAbGroup>,
}

impl BarSelfCheck {
    pub fn passed(&self) -> bool {
        self.dd_zero && self.normalized.iter().zip(&self.unnormalized).all(|(a, b)| a.same_invariants(b))
    }
}

/// Compares `H_0..H_n` of both bar complexes; meant for `|G| ≤ 8`.
pub fn bar_selfcheck(g: &FiniteGroup, n: usize) -> Result<BarSelfCheck> {
    let cfg = BarConfig { max_tuples: 1 << 20, ..BarConfig::default() };
    let norm = BarComplex::new(g, n + 1, &cfg)?;
    let full = BarComplex::unnormalized(g, n + 1, &cfg)?;
    let hom = |bar: &BarComplex| -> Result<Vec<FgAbGroup>> {
        (0..=n)
            .map(|i| {
                let zero = SparseIntMatrix::from_columns(0, vec![Vec::new(); bar.dim(0)])?;
                let dn = if i == 0 { &zero } else { bar.d(i) };
                let r = reduce::reduce(dn, bar.d(i + 1), 62, usize::MAX)
                    .map_err(|_| Error::Budget("coefficient growth in the unnormalized complex".into()))?;
                Ok(canonical(&homology_ker(&small_complex(&r, i)?, i as i64)?.group))
            })
            .collect()
    };
    Ok(BarSelfCheck {
        dd_zero: norm.check_dd() && full.check_dd(),
        normalized: hom(&norm)?,
        unnormalized: hom(&full)?,
    })
}

/// Dense copy of a bar differential, for tests and small examples.
pub fn dense_boundary(bar: &BarComplex, n: usize) -> IntMatrix {
    bar.d(n).to_dense()
}
