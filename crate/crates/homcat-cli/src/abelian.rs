use std::path::PathBuf;

use clap::Subcommand;
use homcat::chains::{apply_functor_ses, homology_coker, homology_ker, interchange_iso_pair, long_exact_sequence};
use homcat::derived::{abelian_uct_check, ext_group, homological_yoneda, left_derived, FunctorSpec};
use homcat::fgab::smith_normal_form;
use num_bigint::BigInt;

use crate::report::Report;
use crate::{input, CliError, Ctx};

/// Largest homology group whose elements are all round-tripped.
const ENUMERATE_LIMIT: u64 = 4096;

#[derive(Subcommand)]
pub enum Cmd {
    /// Smith normal form divisors of a matrix.
    Snf { matrix: PathBuf },
    /// Homology of a chain complex.
    Homology {
        complex: PathBuf,
        /// One degree; all degrees when omitted.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        /// Also build both constructions and verify the interchange isomorphism.
        #[arg(long)]
        interchange: bool,
    },
    /// Long exact homology sequence of a short exact sequence of complexes.
    Les {
        ses: PathBuf,
        /// Apply `id` or `tensor:k` termwise first.
        #[arg(long)]
        functor: Option<String>,
    },
    /// Left derived functor `L_n T(X)`.
    Derived {
        group: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        degree: usize,
    },
    /// `Ext^n(X, A)`; `A` is `Z`, `Z/k` or an abgroup file.
    Ext {
        group: PathBuf,
        coeff: String,
        #[arg(long)]
        degree: usize,
    },
    /// Homological Yoneda round trips on `H_n(T C)`.
    Yoneda {
        complex: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Universal coefficient check `H^n(C, A) ≅ Hom(H_n C, A)`.
    Uct {
        complex: PathBuf,
        coeff: String,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
}

fn functor(s: &str) -> Result<FunctorSpec, CliError> {
    FunctorSpec::parse(s).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn run(cmd: &Cmd, ctx: &mut Ctx, rep: &mut Report) -> Result<(), CliError> {
    match cmd {
        Cmd::Snf { matrix } => {
            let m = input::matrix(&ctx.inputs.load(matrix)?)?;
            let s = smith_normal_form(&m);
            let ok = m.rows() == 0 || m.cols() == 0 || s.u.mul(&m).mul(&s.v) == s.s;
            rep.check("decomposition_ok", ok);
            let d: Vec<String> = s.divisors.iter().map(BigInt::to_string).collect();
            rep.set("divisors", d.clone());
            rep.line(d.join(","));
        }
        Cmd::Homology { complex, degree, interchange } => {
            let c = input::complex(&ctx.inputs.load(complex)?)?;
            let degrees: Vec<i64> = match degree {
                Some(n) => vec![*n],
                None => (c.lo()..=c.hi()).collect(),
            };
            for n in degrees {
                let h = homology_ker(&c, n)?.group;
                rep.set(&format!("H_{n}"), h.invariant_string());
                rep.line(format!("H_{n} ≅ {}", h.invariant_string()));
                if *interchange {
                    let hc = homology_coker(&c, n)?.group;
                    let (f, g) = interchange_iso_pair(&c, n)?;
                    let ok = hc.same_invariants(&h) && g.compose(&f).is_ok_and(|m| m.is_identity()) && f.compose(&g).is_ok_and(|m| m.is_identity());
                    rep.check(&format!("interchange_{n}"), ok);
                    rep.line(format!("interchange at {n}: {}", if ok { "verified" } else { "FAILED" }));
                }
            }
        }
        Cmd::Les { ses, functor: t } => {
            let mut s = input::ses(&ctx.inputs.load(ses)?)?;
            if let Some(t) = t {
                s = apply_functor_ses(&functor(t)?, &s)?;
            }
            let les = long_exact_sequence(&s)?;
            for (i, node) in les.nodes.iter().enumerate() {
                let mark = if les.exact[i] { "" } else { "   (not exact)" };
                rep.line(format!("{} ≅ {}{mark}", node.label, node.group.invariant_string()));
            }
            let nodes: Vec<String> = les.nodes.iter().map(|n| format!("{} ≅ {}", n.label, n.group.invariant_string())).collect();
            rep.set("nodes", nodes);
            let ok = rep.check("exact", les.is_exact());
            rep.line(format!("exact: {ok}"));
        }
        Cmd::Derived { group, functor: t, degree } => {
            let x = input::abgroup(&ctx.inputs.load(group)?)?;
            let l = left_derived(&functor(t)?, *degree, &x)?;
            rep.set("value", l.invariant_string());
            rep.line(format!("L_{degree} ≅ {}", l.invariant_string()));
        }
        Cmd::Ext { group, coeff, degree } => {
            let x = input::abgroup(&ctx.inputs.load(group)?)?;
            let a = input::coefficient_group(coeff, &mut ctx.inputs)?;
            let e = ext_group(&x, &a, *degree)?;
            rep.set("value", e.invariant_string());
            rep.line(format!("Ext^{degree} ≅ {}", e.invariant_string()));
        }
        Cmd::Yoneda { complex, functor: t, degree } => {
            let c = input::complex(&ctx.inputs.load(complex)?)?;
            let y = homological_yoneda(&c, &functor(t)?, *degree)?;
            let h = &y.homology().group;
            let small = h.order().filter(|o| *o <= BigInt::from(ENUMERATE_LIMIT));
            let probe: Vec<_> = if small.is_some() { h.enumerate() } else { h.generators() };
            let mut ok = probe.iter().all(|e| y.backward(&y.forward(e)).map(|b| &b == e).unwrap_or(false));
            let w = y.witness_group();
            let wprobe = if small.is_some() { w.enumerate() } else { w.generators() };
            ok &= wprobe.iter().all(|x| y.forward_map().apply(&y.backward_map().apply(x)) == *x);
            rep.check("round_trip", ok);
            rep.set("homology", h.invariant_string());
            let verdict = if ok { "OK" } else { "FAILED" };
            match small {
                Some(o) => {
                    rep.set("classes", o.to_string());
                    rep.line(format!("round-trip {verdict}, {o} classes"));
                }
                None => rep.line(format!("round-trip {verdict} on generators, H_{degree} ≅ {}", h.invariant_string())),
            }
        }
        Cmd::Uct { complex, coeff, degree } => {
            let c = input::complex(&ctx.inputs.load(complex)?)?;
            let a = input::coefficient_group(coeff, &mut ctx.inputs)?;
            let r = abelian_uct_check(&c, &a, *degree)?;
            if let Some(p) = r.precondition {
                return Err(homcat::Error::Precondition(p).into());
            }
            let (coh, hom) = (r.cohomology.unwrap(), r.hom_group.unwrap());
            rep.set("cohomology", coh.invariant_string());
            rep.set("hom", hom.invariant_string());
            rep.line(format!("H^{degree}(C, A) ≅ {}", coh.invariant_string()));
            rep.line(format!("Hom(H_{degree} C, A) ≅ {}", hom.invariant_string()));
            let iso = rep.check("iso", r.iso_ok);
            let van = rep.check("lower_vanishing", r.vanishing_ok);
            rep.line(format!("restriction iso: {iso}"));
            rep.line(format!("lower cohomology vanishes: {van}"));
        }
    }
    Ok(())
}
