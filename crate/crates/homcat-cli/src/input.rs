//! JSON input formats.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use homcat::chains::{ChainComplex, ChainMap, ComplexSES};
use homcat::fgab::{AbMorphism, FgAbGroup, IntMatrix};
use homcat::grp::{DoubleExtension, Extension, FiniteGroup, GroupHom, Subgroup};
use homcat::uce;
use num_bigint::BigInt;
use serde::Deserialize;

use crate::CliError;

/// An input file, with the bytes kept for the report digest.
pub struct Source {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Ok(Source { path: path.to_path_buf(), bytes })
    }

    pub fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        serde_json::from_slice(&self.bytes).map_err(|e| {
            CliError::Parse(format!("{}:{}:{}: {}", self.path.display(), e.line(), e.column(), e))
        })
    }

    fn dir(&self) -> PathBuf {
        self.path.parent().map(Path::to_path_buf).unwrap_or_default()
    }
}

/// Files read so far, in order, for the report.
#[derive(Default)]
pub struct Inputs {
    pub seen: Vec<(String, u64)>,
}

impl Inputs {
    pub fn load(&mut self, path: &Path) -> Result<Source, CliError> {
        let s = Source::read(path)?;
        self.seen.push((path.display().to_string(), fnv1a(&s.bytes)));
        Ok(s)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Small(i64),
    Big(String),
}

impl Entry {
    fn value(&self) -> Result<BigInt, CliError> {
        match self {
            Entry::Small(v) => Ok(BigInt::from(*v)),
            Entry::Big(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

type Rows = Vec<Vec<Entry>>;

fn to_matrix(rows: &Rows, cols_hint: Option<usize>) -> Result<IntMatrix, CliError> {
    let cols = rows.first().map(Vec::len).or(cols_hint).unwrap_or(0);
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(CliError::Parse(format!("matrix row {i} has {} entries, expected {cols}", r.len())));
        }
        for e in r {
            data.push(e.value()?);
        }
    }
    Ok(IntMatrix::new(rows.len(), cols, data)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    matrix: Rows,
}

pub fn matrix(src: &Source) -> Result<IntMatrix, CliError> {
    to_matrix(&src.parse::<MatrixFile>()?.matrix, None)
}

/// `{"presentation": [[...]]}`: rows are generators, columns relations.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AbBody {
    presentation: Rows,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AbLit {
    Wrapped { abgroup: AbBody },
    Body(AbBody),
}

impl AbLit {
    fn build(&self) -> Result<FgAbGroup, CliError> {
        let b = match self {
            AbLit::Wrapped { abgroup } => abgroup,
            AbLit::Body(b) => b,
        };
        Ok(FgAbGroup::from_presentation(to_matrix(&b.presentation, None)?))
    }
}

pub fn abgroup(src: &Source) -> Result<FgAbGroup, CliError> {
    src.parse::<AbLit>()?.build()
}

/// `Z`, `Z/k`, or a path to an abgroup file.
pub fn coefficient_group(spec: &str, inputs: &mut Inputs) -> Result<FgAbGroup, CliError> {
    let t = spec.trim();
    if t.eq_ignore_ascii_case("z") {
        return Ok(FgAbGroup::free(1));
    }
    if let Some(k) = t.strip_prefix("Z/").or_else(|| t.strip_prefix("z/")) {
        let k: i64 = k.parse().map_err(|_| CliError::Parse(format!("bad modulus in {spec:?}")))?;
        return Ok(FgAbGroup::cyclic(k));
    }
    abgroup(&inputs.load(Path::new(t))?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatLit {
    Wrapped { matrix: Rows },
    Bare(Rows),
}

impl MatLit {
    fn rows(&self) -> &Rows {
        match self {
            MatLit::Wrapped { matrix } | MatLit::Bare(matrix) => matrix,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexBody {
    lo: i64,
    hi: i64,
    objects: Vec<AbLit>,
    #[serde(default)]
    differentials: Vec<MatLit>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexLit {
    Wrapped { complex: ComplexBody },
    Body(ComplexBody),
}

fn map_between(src: &FgAbGroup, tgt: &FgAbGroup, m: &MatLit) -> Result<AbMorphism, CliError> {
    let m = to_matrix(m.rows(), Some(src.generator_count()))?;
    Ok(AbMorphism::new(src, tgt, m)?)
}

impl ComplexLit {
    fn build(&self) -> Result<ChainComplex, CliError> {
        let b = match self {
            ComplexLit::Wrapped { complex } => complex,
            ComplexLit::Body(b) => b,
        };
        let len = b.hi - b.lo + 1;
        if len < 1 || b.objects.len() as i64 != len {
            return Err(CliError::Parse(format!("{} objects for degrees {}..={}", b.objects.len(), b.lo, b.hi)));
        }
        if b.differentials.len() as i64 != len - 1 {
            return Err(CliError::Parse(format!("expected {} differentials, found {}", len - 1, b.differentials.len())));
        }
        let objs = b.objects.iter().map(AbLit::build).collect::<Result<Vec<_>, _>>()?;
        let diffs = b
            .differentials
            .iter()
            .enumerate()
            .map(|(i, m)| map_between(&objs[i + 1], &objs[i], m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChainComplex::new(b.lo, objs, diffs)?)
    }
}

pub fn complex(src: &Source) -> Result<ChainComplex, CliError> {
    src.parse::<ComplexLit>()?.build()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapLit {
    lo: i64,
    components: Vec<MatLit>,
}

fn chain_map(src: &ChainComplex, tgt: &ChainComplex, m: &MapLit) -> Result<ChainMap, CliError> {
    let comps = m
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = m.lo + i as i64;
            map_between(&src.obj(n), &tgt.obj(n), c)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChainMap::new(src, tgt, m.lo, comps)?)
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum SesBody {
    Explicit { a: ComplexLit, b: ComplexLit, c: ComplexLit, iota: MapLit, pi: MapLit },
    Cone { source: ComplexLit, target: ComplexLit, map: MapLit },
    Split { a: ComplexLit, c: ComplexLit },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SesFile {
    ses: SesBody,
}

/// `{"ses": {"explicit" | "cone" | "split": {...}}}`.
pub fn ses(src: &Source) -> Result<ComplexSES, CliError> {
    Ok(match src.parse::<SesFile>()?.ses {
        SesBody::Explicit { a, b, c, iota, pi } => {
            let (a, b, c) = (a.build()?, b.build()?, c.build()?);
            ComplexSES::new(chain_map(&a, &b, &iota)?, chain_map(&b, &c, &pi)?, None)?
        }
        SesBody::Cone { source, target, map } => {
            let (s, t) = (source.build()?, target.build()?);
            ComplexSES::cone(&chain_map(&s, &t, &map)?)?
        }
        SesBody::Split { a, c } => ComplexSES::split(&a.build()?, &c.build()?)?,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CayleyBody {
    cayley: Vec<Vec<usize>>,
    identity: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PermBody {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum GroupLit {
    Group(CayleyBody),
    PermGroup(PermBody),
    Builtin(String),
}

impl GroupLit {
    fn build(&self) -> Result<FiniteGroup, CliError> {
        Ok(match self {
            GroupLit::Group(b) => FiniteGroup::from_cayley(&b.cayley, b.identity)?,
            GroupLit::PermGroup(b) => FiniteGroup::from_permutations(b.degree, &b.generators)?,
            GroupLit::Builtin(name) => builtin(name)?,
        })
    }
}

/// Named groups: `Z/n`, `S_n`, `A_n`, `D_n` (order 2n), `Dic_m`, `Q8`, `V4`,
/// `SL(2,p)`, `PSL(2,p)`, and products `G x H`.
pub fn builtin(name: &str) -> Result<FiniteGroup, CliError> {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((a, b)) = s.split_once('x') {
        return Ok(builtin(a)?.product(&builtin(b)?));
    }
    let num = |t: &str| t.parse::<usize>().map_err(|_| CliError::Parse(format!("unknown group {name:?}")));
    let bounded = |n: usize, max: usize| {
        if n == 0 || n > max {
            Err(CliError::Parse(format!("{name:?}: parameter out of range")))
        } else {
            Ok(n)
        }
    };
    Ok(match s.as_str() {
        "1" | "trivial" => FiniteGroup::trivial(),
        "Q8" => FiniteGroup::quaternion(),
        "V4" => FiniteGroup::klein_four(),
        _ => {
            if let Some(n) = s.strip_prefix("Z/") {
                FiniteGroup::cyclic(bounded(num(n)?, 512)?)
            } else if let Some(n) = s.strip_prefix("S_") {
                FiniteGroup::symmetric(bounded(num(n)?, 5)?)
            } else if let Some(n) = s.strip_prefix("A_") {
                FiniteGroup::alternating(bounded(num(n)?, 6)?)
            } else if let Some(n) = s.strip_prefix("D_") {
                FiniteGroup::dihedral(bounded(num(n)?, 256)?)
            } else if let Some(n) = s.strip_prefix("Dic_") {
                FiniteGroup::dicyclic(bounded(num(n)?, 128)?)
            } else if let Some(p) = s.strip_prefix("SL(2,").and_then(|t| t.strip_suffix(')')) {
                uce::sl2(num(p)?)?
            } else if let Some(p) = s.strip_prefix("PSL(2,").and_then(|t| t.strip_suffix(')')) {
                uce::psl2(num(p)?)?
            } else {
                return Err(CliError::Parse(format!("unknown group {name:?}")));
            }
        }
    })
}

/// A group given inline or as a path relative to the referring file.
#[derive(Deserialize)]
#[serde(untagged)]
enum GroupRef {
    Path(String),
    Inline(GroupLit),
}

impl GroupRef {
    fn build(&self, base: &Path, inputs: &mut Inputs) -> Result<FiniteGroup, CliError> {
        match self {
            GroupRef::Inline(g) => g.build(),
            GroupRef::Path(p) => group(&inputs.load(&base.join(p))?),
        }
    }
}

pub fn group(src: &Source) -> Result<FiniteGroup, CliError> {
    src.parse::<GroupLit>()?.build()
}

/// An element by index, or by permutation for groups built from permutations.
#[derive(Deserialize)]
#[serde(untagged)]
enum ElemRef {
    Index(usize),
    Perm(Vec<usize>),
}

fn resolve(g: &FiniteGroup, elems: &[ElemRef]) -> Result<Vec<usize>, CliError> {
    let mut by_perm: Option<HashMap<Vec<usize>, usize>> = None;
    elems
        .iter()
        .map(|e| match e {
            ElemRef::Index(i) if *i < g.order() => Ok(*i),
            ElemRef::Index(i) => Err(CliError::Parse(format!("element {i} out of range"))),
            ElemRef::Perm(p) => {
                let map = by_perm.get_or_insert_with(|| g.elements().filter_map(|a| g.permutation(a).map(|q| (q, a))).collect());
                map.get(p).copied().ok_or_else(|| CliError::Parse(format!("{p:?} is not an element of the group")))
            }
        })
        .collect()
}

pub fn subgroup_from(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    homcat::grp::subgroup_generated(g, gens)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ExtBody {
    Maps { kernel: GroupRef, middle: GroupRef, base: GroupRef, iota: Vec<usize>, pi: Vec<usize> },
    Normal { middle: GroupRef, normal: Vec<ElemRef> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtFile {
    extension: ExtBody,
}

/// `{"extension": {kernel, middle, base, iota, pi}}` with map vectors, or
/// `{"extension": {middle, normal}}` with generators of the kernel.
pub fn extension(src: &Source, inputs: &mut Inputs) -> Result<Extension, CliError> {
    let dir = src.dir();
    match src.parse::<ExtFile>()?.extension {
        ExtBody::Maps { kernel, middle, base, iota, pi } => {
            let (a, e, x) = (kernel.build(&dir, inputs)?, middle.build(&dir, inputs)?, base.build(&dir, inputs)?);
            Ok(Extension::new(GroupHom::new(&a, &e, iota)?, GroupHom::new(&e, &x, pi)?)?)
        }
        ExtBody::Normal { middle, normal } => {
            let e = middle.build(&dir, inputs)?;
            let n = subgroup_from(&e, &resolve(&e, &normal)?);
            if !n.is_normal() {
                return Err(homcat::Error::Precondition("kernel generators do not generate a normal subgroup".into()).into());
            }
            Ok(Extension::from_normal(&e, &n)?)
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleBody {
    group: GroupRef,
    n1: Vec<ElemRef>,
    n2: Vec<ElemRef>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleFile {
    double_extension: DoubleBody,
}

/// `{"double_extension": {group, n1, n2}}`: the square of quotients by two normal subgroups.
pub fn double_extension(src: &Source, inputs: &mut Inputs) -> Result<DoubleExtension, CliError> {
    let b = src.parse::<DoubleFile>()?.double_extension;
    let g = b.group.build(&src.dir(), inputs)?;
    let n1 = subgroup_from(&g, &resolve(&g, &b.n1)?);
    let n2 = subgroup_from(&g, &resolve(&g, &b.n2)?);
    Ok(DoubleExtension::from_normals(&g, &n1, &n2)?)
}

/// Either a single or a two-fold extension file.
pub fn any_extension(src: &Source, inputs: &mut Inputs) -> Result<homcat::grp::AnyExtension, CliError> {
    use homcat::grp::AnyExtension;
    let v: serde_json::Value = src.parse()?;
    if v.get("double_extension").is_some() {
        Ok(AnyExtension::Double(double_extension(src, inputs)?))
    } else {
        Ok(AnyExtension::Single(extension(src, inputs)?))
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ProbeSpec {
    /// `X × Z/m`.
    Product { name: Option<String>, order: usize },
    /// The extension under test.
    #[serde(rename = "self")]
    Itself { name: Option<String> },
    /// Pullback of the extension under test against `X × Z/m`.
    PullbackProduct { name: Option<String>, order: usize },
    /// An extension file whose base has the same Cayley table.
    File { name: Option<String>, path: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LibraryBody {
    version: u32,
    probes: Vec<ProbeSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LibraryFile {
    probe_library: LibraryBody,
}

/// Probe libraries from a file, or from every `.json` file of a directory in
/// name order. Returns the library versions alongside the probes.
pub fn probes(path: &Path, e: &Extension, inputs: &mut Inputs) -> Result<(Vec<u32>, Vec<uce::Probe>), CliError> {
    let files = if path.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|err| CliError::Parse(format!("{}: {err}", path.display())))?
            .filter_map(|d| d.ok().map(|d| d.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    let mut versions = Vec::new();
    let mut out = Vec::new();
    for f in files {
        let src = inputs.load(&f)?;
        let lib = src.parse::<LibraryFile>()?.probe_library;
        versions.push(lib.version);
        for p in lib.probes {
            out.push(match p {
                ProbeSpec::Product { name, order } => uce::Probe {
                    name: name.unwrap_or_else(|| format!("X×Z/{order}")),
                    ext: uce::product_extension(&e.x, order)?,
                },
                ProbeSpec::Itself { name } => uce::Probe { name: name.unwrap_or_else(|| "self".into()), ext: e.clone() },
                ProbeSpec::PullbackProduct { name, order } => uce::Probe {
                    name: name.unwrap_or_else(|| format!("pullback(self, X×Z/{order})")),
                    ext: uce::pullback(e, &uce::product_extension(&e.x, order)?)?,
                },
                ProbeSpec::File { name, path } => {
                    let s = inputs.load(&src.dir().join(&path))?;
                    uce::Probe { name: name.unwrap_or(path), ext: extension(&s, inputs)? }
                }
            });
        }
    }
    Ok((versions, out))
}

pub fn elements(g: &FiniteGroup, spec: &str) -> Result<Vec<usize>, CliError> {
    let parsed: Vec<ElemRef> = serde_json::from_str(spec).map_err(|e| CliError::Parse(format!("element list {spec:?}: {e}")))?;
    resolve(g, &parsed)
}
