use std::path::PathBuf;

use clap::Subcommand;
use homcat::grp::{abelianisation, center, commutator_subgroup, higgins_commutator, Subgroup};
use homcat::grphom::{classical_cohomology, group_homology_with, stallings_tail, Coeff};

use crate::report::Report;
use crate::{input, CliError, Ctx};

#[derive(Subcommand)]
pub enum Cmd {
    /// Abelianisation invariants.
    Ab { group: PathBuf },
    /// `[K, L]`; both default to the whole group. Subgroups are JSON lists of
    /// generators, given as element indices or permutations.
    Commutator {
        group: PathBuf,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        l: Option<String>,
    },
    /// Center of the group.
    Center { group: PathBuf },
    /// `H_n(G; Z)` or `H_n(G; Z/k)` from the bar complex.
    Homology {
        group: PathBuf,
        #[arg(long)]
        degree: usize,
        /// `Z` or `Z/k`.
        #[arg(long, default_value = "Z")]
        coeff: String,
    },
    /// `Ext^n(G, A)` with the degree shift `Ext^n = H^{n+1}`; `--classical`
    /// reads the degree as that of `H^n`.
    Cohomology {
        group: PathBuf,
        #[arg(long)]
        degree: usize,
        /// `Z`, `Z/k` or an abgroup file.
        #[arg(long, default_value = "Z")]
        coeff: String,
        #[arg(long)]
        classical: bool,
    },
    /// Low-degree exact tail of an extension.
    Stallings { extension: PathBuf },
}

fn subgroup(g: &homcat::grp::FiniteGroup, spec: &Option<String>) -> Result<Subgroup, CliError> {
    match spec {
        None => Ok(Subgroup::whole(g)),
        Some(s) => Ok(input::subgroup_from(g, &input::elements(g, s)?)),
    }
}

fn elements_line(s: &Subgroup) -> String {
    s.elements().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn run(cmd: &Cmd, ctx: &mut Ctx, rep: &mut Report) -> Result<(), CliError> {
    match cmd {
        Cmd::Ab { group } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let ab = abelianisation(&g).group;
            rep.set("ab", ab.invariant_string());
            rep.line(ab.invariant_string());
        }
        Cmd::Commutator { group, k, l } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let s = if k.is_none() && l.is_none() {
                commutator_subgroup(&g)
            } else {
                higgins_commutator(&g, &subgroup(&g, k)?, &subgroup(&g, l)?)
            };
            rep.set("order", s.order());
            rep.set("elements", s.elements().to_vec());
            rep.line(format!("order {}, index {}", s.order(), g.order() / s.order()));
            rep.line(format!("elements: {}", elements_line(&s)));
        }
        Cmd::Center { group } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let z = center(&g);
            rep.set("order", z.order());
            rep.set("elements", z.elements().to_vec());
            rep.line(format!("order {}", z.order()));
            rep.line(format!("elements: {}", elements_line(&z)));
        }
        Cmd::Homology { group, degree, coeff } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let c = Coeff::parse(coeff).map_err(|e| CliError::Parse(e.to_string()))?;
            let h = group_homology_with(&g, *degree, c, &ctx.cfg)?;
            rep.set("value", h.invariant_string());
            rep.line(h.invariant_string());
        }
        Cmd::Cohomology { group, degree, coeff, classical } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let a = input::coefficient_group(coeff, &mut ctx.inputs)?;
            let n = if *classical { *degree } else { degree + 1 };
            let h = classical_cohomology(&g, n, &a, &ctx.cfg)?;
            rep.set("classical_degree", n);
            rep.set("value", h.invariant_string());
            rep.line(h.invariant_string());
        }
        Cmd::Stallings { extension } => {
            let e = input::extension(&ctx.inputs.load(extension)?, &mut ctx.inputs)?;
            let r = stallings_tail(&e)?;
            let gamma = if r.gamma.is_zero() {
                "zero"
            } else if r.gamma.is_mono() {
                "mono"
            } else {
                "nonzero"
            };
            rep.line(format!("L_0 ≅ {}", r.l0.invariant_string()));
            rep.line(format!("gamma: {gamma}"));
            let f_kind = if r.f_star.is_iso() {
                "iso"
            } else if r.f_star.is_epi() {
                "epi"
            } else {
                "not onto"
            };
            rep.line(format!("f_*: {f_kind}"));
            rep.line(format!("H_2(base) ≅ {}", r.h2_base.invariant_string()));
            rep.line(format!("ker gamma ≅ {}", r.ker_gamma.invariant_string()));
            rep.set("l0", r.l0.invariant_string());
            rep.set("h2_base", r.h2_base.invariant_string());
            rep.set("ker_gamma", r.ker_gamma.invariant_string());
            let a = rep.check("exact_at_ab", r.exact_at_ab);
            let b = rep.check("f_star_onto", r.f_star_onto);
            let c = rep.check("h2_covers_kernel", r.h2_covers_kernel);
            rep.line(format!("exact at ab: {a}"));
            rep.line(format!("f_* onto: {b}"));
            rep.line(format!("H_2 covers ker gamma: {c}"));
            rep.line(format!("exactness: {}", if r.passed() { "pass" } else { "FAIL" }));
        }
    }
    Ok(())
}
