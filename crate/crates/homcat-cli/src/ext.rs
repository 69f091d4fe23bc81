use std::path::PathBuf;

use clap::Subcommand;
use homcat::grp::{abelian_presentation, double_is_central, extensions_congruent, is_central_extension, Congruence};
use homcat::uce::{acyclicity_class_with, enumerate_central_extensions, standard_probes, uct_pairing_with, verify_uce};

use crate::report::Report;
use crate::{input, CliError, Ctx};

#[derive(Subcommand)]
pub enum Cmd {
    /// Validate an extension file.
    Check { extension: PathBuf },
    /// Whether the kernel is central.
    Central { extension: PathBuf },
    /// Centrality of a two-fold extension.
    Central2 { double: PathBuf },
    /// Congruence of two extensions, searching zigzags through a pool.
    Congruent {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        pool: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Central extensions of a base by an abelian kernel, up to congruence.
    Enumerate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        kernel: PathBuf,
        /// Also list a representative per class.
        #[arg(long)]
        list: bool,
    },
    /// Universal central extension certificate.
    UceVerify {
        extension: PathBuf,
        /// Probe library file or directory; built-in probes when omitted.
        #[arg(long)]
        probes: Option<PathBuf>,
    },
    /// `L_i T(G)` for `i ≤ n`, T the exponent-`k` abelianisation.
    Acyclicity {
        group: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: usize,
    },
    /// Evaluation pairing `Ext^n(G, M) → Hom(L_n T(G), M)`.
    Uct {
        group: PathBuf,
        #[arg(long)]
        degree: usize,
        /// `Z/k` or an abgroup file.
        #[arg(long)]
        coeff: String,
    },
}

pub fn run(cmd: &Cmd, ctx: &mut Ctx, rep: &mut Report) -> Result<(), CliError> {
    match cmd {
        Cmd::Check { extension } => {
            let e = input::extension(&ctx.inputs.load(extension)?, &mut ctx.inputs)?;
            rep.set("orders", vec![e.a.order(), e.e.order(), e.x.order()]);
            rep.line(format!("valid: |A| = {}, |E| = {}, |X| = {}", e.a.order(), e.e.order(), e.x.order()));
            if e.a.is_abelian() {
                let a = abelian_presentation(&e.a).0;
                rep.set("kernel", a.invariant_string());
                rep.line(format!("A ≅ {}", a.invariant_string()));
            }
        }
        Cmd::Central { extension } => {
            let e = input::extension(&ctx.inputs.load(extension)?, &mut ctx.inputs)?;
            let c = is_central_extension(&e);
            rep.set("central", c);
            rep.line(format!("central: {c}"));
        }
        Cmd::Central2 { double } => {
            let d = input::double_extension(&ctx.inputs.load(double)?, &mut ctx.inputs)?;
            let c = double_is_central(&d);
            rep.set("central", c);
            rep.line(format!("central: {c}"));
        }
        Cmd::Congruent { first, second, pool, bound } => {
            let e = input::any_extension(&ctx.inputs.load(first)?, &mut ctx.inputs)?;
            let f = input::any_extension(&ctx.inputs.load(second)?, &mut ctx.inputs)?;
            let pool = pool
                .iter()
                .map(|p| {
                    let s = ctx.inputs.load(p)?;
                    input::any_extension(&s, &mut ctx.inputs)
                })
                .collect::<Result<Vec<_>, _>>()?;
            match extensions_congruent(&e, &f, &pool, *bound)? {
                Congruence::Yes(steps) => {
                    rep.set("congruent", "yes");
                    rep.set("steps", steps.len());
                    rep.line(format!("congruent: yes ({} step{})", steps.len(), if steps.len() == 1 { "" } else { "s" }));
                    for s in &steps {
                        rep.line(format!("  {} → {}", s.from, s.to));
                    }
                }
                Congruence::No => {
                    rep.set("congruent", "no");
                    rep.line("congruent: no");
                }
                Congruence::Unknown => {
                    rep.set("congruent", "unknown");
                    rep.line(format!("congruent: unknown (no zigzag of length ≤ {bound})"));
                }
            }
        }
        Cmd::Enumerate { base, kernel, list } => {
            let x = input::group(&ctx.inputs.load(base)?)?;
            let a = input::group(&ctx.inputs.load(kernel)?)?;
            let c = enumerate_central_extensions(&x, &a)?;
            rep.set("classes", c.count());
            rep.set("cocycles", c.cocycles);
            rep.set("coboundaries", c.coboundaries);
            rep.line(format!("{} congruence classes", c.count()));
            if *list {
                for (i, cl) in c.classes.iter().enumerate() {
                    let ab = homcat::grp::abelianisation(&cl.extension.e).group;
                    let abelian = if cl.extension.e.is_abelian() { "abelian" } else { "nonabelian" };
                    rep.line(format!("  class {i}: {abelian}, ab(E) ≅ {}", ab.invariant_string()));
                }
            }
        }
        Cmd::UceVerify { extension, probes } => {
            let e = input::extension(&ctx.inputs.load(extension)?, &mut ctx.inputs)?;
            let (versions, probes) = match probes {
                Some(p) => input::probes(p, &e, &mut ctx.inputs)?,
                None => (vec![], standard_probes(&e)?),
            };
            let cert = verify_uce(&e, &probes)?;
            for c in &cert.clauses {
                let status = if c.passed { "pass" } else { "FAIL" };
                let detail = if c.detail.is_empty() { String::new() } else { format!("  ({})", c.detail) };
                rep.line(format!("clause {} {}: {status}{detail}", c.clause, c.name));
            }
            for p in &cert.probes {
                rep.line(format!("probe {}: {} morphism{}", p.name, p.morphisms, if p.morphisms == 1 { "" } else { "s" }));
            }
            if !versions.is_empty() {
                let v: Vec<String> = versions.iter().map(u32::to_string).collect();
                rep.line(format!("probe library version {}", v.join(",")));
            }
            rep.line(format!("assumes: {}", cert.assumed));
            rep.set("failing_clauses", cert.failing_clauses());
            if rep.check("valid", cert.valid()) {
                rep.line("certificate valid");
            } else {
                let f: Vec<String> = cert.failing_clauses().iter().map(usize::to_string).collect();
                rep.line(format!("certificate invalid: clause {}", f.join(", ")));
            }
        }
        Cmd::Acyclicity { group, k, n } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let r = acyclicity_class_with(&g, *k, *n, &ctx.cfg)?;
            for (i, v) in r.values.iter().enumerate() {
                rep.line(format!("L_{i} ≅ {}", v.invariant_string()));
            }
            let vals: Vec<String> = r.values.iter().map(|v| v.invariant_string()).collect();
            rep.set("values", vals);
            match r.max_class() {
                Some(m) if m == *n => rep.line(format!("in T_{m} (checked up to {n})")),
                Some(m) => rep.line(format!("in T_{m}, not in T_{}", m + 1)),
                None => rep.line("not in T_0"),
            }
            rep.set("max_class", r.max_class());
        }
        Cmd::Uct { group, degree, coeff } => {
            let g = input::group(&ctx.inputs.load(group)?)?;
            let m = input::coefficient_group(coeff, &mut ctx.inputs)?;
            let r = uct_pairing_with(&g, *degree, &m, &ctx.cfg)?;
            if let Some(p) = r.precondition {
                return Err(homcat::Error::Precondition(p).into());
            }
            let s = |x: &Option<homcat::fgab::FgAbGroup>| x.as_ref().map(|g| g.invariant_string()).unwrap_or_default();
            rep.line(format!("Ext^{degree} ≅ {}", s(&r.ext)));
            rep.line(format!("L_{degree} ≅ {}", s(&r.l_n)));
            rep.line(format!("Hom(L_{degree}, M) ≅ {}", s(&r.hom)));
            rep.line(format!("route: {}", r.route));
            rep.set("route", r.route);
            let a = rep.check("well_defined", r.well_defined);
            let b = rep.check("injective", r.injective);
            let c = rep.check("cardinality_match", r.cardinality_match);
            rep.line(format!("well-defined: {a}"));
            rep.line(format!("injective: {b}"));
            rep.line(format!("cardinality match: {c}"));
            rep.line(format!("bijective: {}", r.bijective()));
        }
    }
    Ok(())
}
