//! Turning a parsed [`Document`] into library objects over a chosen field.

use std::collections::BTreeMap;
use std::str::FromStr;

use hypercoh_core::field::ParseScalarError;
use hypercoh_core::filtered::FilteredComplex;
use hypercoh_core::homalg::{ChainMap, CochainComplex, Matrix, MultiTensorLayout, SparseVec, Subspace};
use hypercoh_core::operads::{endomorphism_operad, DgOperad, OperadAlgebra};
use hypercoh_core::site::{MonotoneMap, Open, PosetSite, Sheaf, SheafMap};
use hypercoh_core::Field;

use crate::format::{ComplexSpec, Document, FiltrationSpec, MapDocument, MatrixSpec, OperadSpec, PosetSpec, Scalar};
use crate::CliError;

/// Fields whose elements can be read from `"p/q"` literals.
pub trait Coefficients: Field + FromStr<Err = ParseScalarError> {}

impl<F: Field + FromStr<Err = ParseScalarError>> Coefficients for F {}

fn invalid(at: impl std::fmt::Display, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{at}: {msg}"))
}

fn core(at: impl std::fmt::Display) -> impl FnOnce(hypercoh_core::Error) -> CliError {
    move |e| CliError::from_core(e).located(&at.to_string())
}

pub fn scalar<F: Coefficients>(s: &Scalar, at: &str) -> Result<F, CliError> {
    s.0.parse().map_err(|e: ParseScalarError| CliError::Parse(format!("{at}: {e}")))
}

/// A `rows × cols` matrix; `[]` is the zero matrix.
pub fn matrix<F: Coefficients>(m: &MatrixSpec, rows: usize, cols: usize, at: &str) -> Result<Matrix<F>, CliError> {
    if m.is_empty() {
        return Ok(Matrix::zeros(rows, cols));
    }
    if m.len() != rows {
        return Err(invalid(at, format!("expected {rows} rows, found {}", m.len())));
    }
    let mut dense = Vec::with_capacity(rows);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(invalid(at, format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        dense.push(row.iter().map(|s| scalar(s, at)).collect::<Result<Vec<F>, _>>()?);
    }
    Ok(Matrix::from_rows(rows, cols, dense))
}

pub fn complex<F: Coefficients>(dims: &[usize], diffs: &[MatrixSpec], at: &str) -> Result<CochainComplex<F>, CliError> {
    if dims.is_empty() {
        return Err(invalid(at, "a complex needs at least one degree"));
    }
    if diffs.len() > dims.len() - 1 {
        return Err(invalid(at, format!("{} differentials for {} degrees", diffs.len(), dims.len())));
    }
    let mats = (0..dims.len() - 1)
        .map(|n| match diffs.get(n) {
            Some(m) => matrix(m, dims[n + 1], dims[n], &format!("{at}.differentials[{n}]")),
            None => Ok(Matrix::zeros(dims[n + 1], dims[n])),
        })
        .collect::<Result<Vec<_>, _>>()?;
    CochainComplex::new(dims.to_vec(), mats).map_err(core(at))
}

fn complex_of<F: Coefficients>(c: &ComplexSpec, at: &str) -> Result<CochainComplex<F>, CliError> {
    complex(&c.dims, &c.differentials, at)
}

pub fn poset(p: &PosetSpec, at: &str) -> Result<PosetSite, CliError> {
    let names: Vec<&str> = p.elements.iter().map(String::as_str).collect();
    let mut seen = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
        if seen.insert(*n, i).is_some() {
            return Err(invalid(at, format!("duplicate element `{n}`")));
        }
    }
    for (i, [a, b]) in p.covers.iter().enumerate() {
        for x in [a, b] {
            if !seen.contains_key(x.as_str()) {
                return Err(invalid(format!("{at}.covers[{i}]"), format!("unknown element `{x}`")));
            }
        }
    }
    let covers: Vec<(&str, &str)> = p.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
    PosetSite::from_names(&names, &covers).map_err(core(at))
}

fn element(site: &PosetSite, name: &str, at: &str) -> Result<usize, CliError> {
    site.index_of(name).ok_or_else(|| invalid(at, format!("unknown element `{name}`")))
}

/// The objects described by a document.
#[derive(Clone, Debug)]
pub struct Problem<F: Field> {
    pub site: PosetSite,
    pub sheaf: Sheaf<F>,
    /// The sheaf is the constant sheaf with this value.
    pub constant_value: Option<CochainComplex<F>>,
    pub product: Option<SheafMap<F>>,
    pub unit: Option<SparseVec<F>>,
    pub filtrations: Option<Vec<FilteredComplex<F>>>,
    pub operad: Option<DgOperad<F>>,
    pub algebra: Option<OperadAlgebra<F>>,
}

impl<F: Coefficients> Problem<F> {
    pub fn load(doc: &Document) -> Result<Self, CliError> {
        let site = poset(&doc.poset, "poset")?;
        let (sheaf, constant_value) = sheaf(&site, doc)?;
        let (product, unit) = product(&site, &sheaf, doc)?;
        let filtrations = if doc.filtration.is_empty() { None } else { Some(filtrations(&site, &sheaf, &doc.filtration)?) };
        let operad = doc.operad.as_ref().map(operad).transpose()?;
        let algebra = match &doc.algebra {
            None => None,
            Some(a) => {
                let value = constant_value.as_ref().ok_or_else(|| invalid("algebra", "needs a constant sheaf"))?;
                let m = product.as_ref().ok_or_else(|| invalid("algebra", "needs a [product] section"))?;
                let mu = ChainMap::new(value.tensor(value), value.clone(), m.components[0].clone()).map_err(core("product"))?;
                let alg = match a.kind.as_str() {
                    "commutative" => OperadAlgebra::commutative(value, &mu, unit.clone(), a.cap),
                    "associative" => OperadAlgebra::associative(value, &mu, a.cap),
                    other => return Err(invalid("algebra.kind", format!("unknown kind `{other}`"))),
                };
                Some(alg.map_err(core("algebra"))?)
            }
        };
        Ok(Problem { site, sheaf, constant_value, product, unit, filtrations, operad, algebra })
    }

    /// The open generated by naming all of its elements, or everything.
    pub fn open(&self, names: Option<&[String]>) -> Result<Open, CliError> {
        match names {
            None => Ok(self.site.whole()),
            Some(ns) => {
                let refs: Vec<&str> = ns.iter().map(String::as_str).collect();
                for n in &refs {
                    element(&self.site, n, "--open")?;
                }
                self.site.open_by_names(&refs).map_err(core("--open"))
            }
        }
    }
}

fn sheaf<F: Coefficients>(site: &PosetSite, doc: &Document) -> Result<(Sheaf<F>, Option<CochainComplex<F>>), CliError> {
    let Some(s) = &doc.sheaf else {
        return Ok((Sheaf::constant_field(site), Some(CochainComplex::unit())));
    };
    let given = usize::from(s.constant.is_some()) + usize::from(s.skyscraper.is_some()) + usize::from(!s.values.is_empty());
    if given != 1 {
        return Err(invalid("sheaf", "give exactly one of `constant`, `skyscraper` or `values`"));
    }
    if let Some(c) = &s.constant {
        let a = complex_of(c, "sheaf.constant")?;
        return Ok((Sheaf::constant(site, &a), Some(a)));
    }
    if let Some(k) = &s.skyscraper {
        let x = element(site, &k.at, "sheaf.skyscraper.at")?;
        let d = complex(&k.dims, &k.differentials, "sheaf.skyscraper")?;
        return Ok((Sheaf::skyscraper(site, x, &d), None));
    }
    let mut values: Vec<Option<CochainComplex<F>>> = vec![None; site.len()];
    for (i, v) in s.values.iter().enumerate() {
        let at = format!("sheaf.values[{i}]");
        let x = element(site, &v.element, &at)?;
        if values[x].is_some() {
            return Err(invalid(at, format!("second value for `{}`", v.element)));
        }
        values[x] = Some(complex(&v.dims, &v.differentials, &at)?);
    }
    let values: Vec<CochainComplex<F>> = values
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| invalid("sheaf.values", format!("no value for `{}`", site.name(x)))))
        .collect::<Result<_, _>>()?;
    let top = values.iter().map(|v| v.top_degree()).max().unwrap_or(0);
    let values: Vec<CochainComplex<F>> = values.iter().map(|v| v.pad(top)).collect();
    let mut covers = BTreeMap::new();
    for (i, r) in s.restrictions.iter().enumerate() {
        let at = format!("sheaf.restrictions[{i}]");
        let (a, b) = (element(site, &r.from, &at)?, element(site, &r.to, &at)?);
        if !site.covers().contains(&(a, b)) {
            return Err(invalid(at, format!("`{}` < `{}` is not a cover", r.from, r.to)));
        }
        if r.maps.len() > top + 1 {
            return Err(invalid(at, format!("{} matrices for {} degrees", r.maps.len(), top + 1)));
        }
        let maps = (0..=top)
            .map(|q| {
                let (rows, cols) = (values[b].dim(q), values[a].dim(q));
                r.maps.get(q).map_or(Ok(Matrix::zeros(rows, cols)), |m| matrix(m, rows, cols, &format!("{at}.maps[{q}]")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if covers.insert((a, b), maps).is_some() {
            return Err(invalid(at, "duplicate restriction"));
        }
    }
    Ok((Sheaf::from_covers(site.clone(), values, covers).map_err(core("sheaf"))?, None))
}

type ProductParts<F> = (Option<SheafMap<F>>, Option<SparseVec<F>>);

fn product<F: Coefficients>(site: &PosetSite, f: &Sheaf<F>, doc: &Document) -> Result<ProductParts<F>, CliError> {
    let Some(p) = &doc.product else {
        if doc.sheaf.is_none() {
            let (_, m) = hypercoh_core::godement::constant_multiplication::<F>(site);
            return Ok((Some(m), Some(vec![(0, F::one())])));
        }
        return Ok((None, None));
    };
    if p.maps.is_empty() == p.at.is_empty() {
        return Err(invalid("product", "give exactly one of `maps` or `at`"));
    }
    let ff = f.tensor(f).map_err(core("product"))?;
    let mut per: Vec<Option<&Vec<MatrixSpec>>> = vec![None; site.len()];
    if p.at.is_empty() {
        per.iter_mut().for_each(|m| *m = Some(&p.maps));
    } else {
        for (i, a) in p.at.iter().enumerate() {
            let x = element(site, &a.element, &format!("product.at[{i}]"))?;
            per[x] = Some(&a.maps);
        }
    }
    let mut components = Vec::with_capacity(site.len());
    for (x, maps) in per.into_iter().enumerate() {
        let at = format!("product at `{}`", site.name(x));
        let maps = maps.ok_or_else(|| invalid(&at, "missing"))?;
        let (src, tgt) = (ff.value(x), f.value(x));
        let level = (0..=src.top_degree())
            .map(|n| {
                let rows = if n <= tgt.top_degree() { tgt.dim(n) } else { 0 };
                maps.get(n).map_or(Ok(Matrix::zeros(rows, src.dim(n))), |m| matrix(m, rows, src.dim(n), &format!("{at}, degree {n}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        components.push(level);
    }
    let m = SheafMap { components };
    m.validate(&ff, f).map_err(core("product"))?;
    let unit = match &p.unit {
        None => None,
        Some(u) => {
            let v: Vec<F> = u.iter().map(|s| scalar(s, "product.unit")).collect::<Result<_, _>>()?;
            Some(hypercoh_core::homalg::vector::from_dense(&v))
        }
    };
    Ok((Some(m), unit))
}

fn filtrations<F: Coefficients>(site: &PosetSite, f: &Sheaf<F>, specs: &[FiltrationSpec]) -> Result<Vec<FilteredComplex<F>>, CliError> {
    let mut out: Vec<Option<FilteredComplex<F>>> = vec![None; site.len()];
    for (i, s) in specs.iter().enumerate() {
        let at = format!("filtration[{i}]");
        let x = element(site, &s.element, &at)?;
        if out[x].is_some() {
            return Err(invalid(at, format!("second filtration for `{}`", s.element)));
        }
        out[x] = Some(filtration(f.value(x), s, &at)?);
    }
    let levels: Vec<FilteredComplex<F>> = out.into_iter().enumerate().map(|(x, l)| l.unwrap_or_else(|| FilteredComplex::trivial(f.value(x)))).collect();
    for &(a, b) in site.covers() {
        levels[a]
            .check_preserved(&levels[b], &f.restriction_map(a, b))
            .map_err(|e| invalid("filtration", format!("restriction `{}` → `{}`: {e}", site.name(a), site.name(b))))?;
    }
    Ok(levels)
}

fn filtration<F: Coefficients>(c: &CochainComplex<F>, s: &FiltrationSpec, at: &str) -> Result<FilteredComplex<F>, CliError> {
    let top = c.top_degree();
    if s.weights.is_empty() == s.generators.is_empty() {
        return Err(invalid(at, "give exactly one of `weights` or `generators`"));
    }
    let (min, steps) = if !s.weights.is_empty() {
        if s.weights.len() > top + 1 {
            return Err(invalid(at, format!("weights for {} degrees, the value has {}", s.weights.len(), top + 1)));
        }
        let weight = |n: usize, i: usize| s.weights.get(n).and_then(|w| w.get(i)).copied().unwrap_or(0);
        for (n, w) in s.weights.iter().enumerate() {
            if w.len() != c.dim(n) {
                return Err(invalid(at, format!("{} weights in degree {n}, dimension is {}", w.len(), c.dim(n))));
            }
        }
        let all = s.weights.iter().flatten().copied().chain([0]);
        let (min, max) = (all.clone().min().unwrap_or(0), all.max().unwrap_or(0));
        let steps = (min..=max)
            .map(|k| (0..=top).map(|n| Subspace::coordinate(c.dim(n), (0..c.dim(n)).filter(|&i| weight(n, i) >= k))).collect())
            .collect();
        (min, steps)
    } else {
        let max = s.generators.iter().map(|g| g.level).max().unwrap_or(0);
        let mut gens: Vec<Vec<Vec<SparseVec<F>>>> = vec![vec![Vec::new(); top + 1]; max.max(0) as usize + 1];
        for (j, g) in s.generators.iter().enumerate() {
            let gat = format!("{at}.generators[{j}]");
            if g.level < 1 || g.degree > top {
                return Err(invalid(gat, "levels start at 1 and degrees must exist in the value"));
            }
            for v in &g.vectors {
                if v.len() != c.dim(g.degree) {
                    return Err(invalid(&gat, format!("vector of length {}, dimension is {}", v.len(), c.dim(g.degree))));
                }
                let v: Vec<F> = v.iter().map(|x| scalar(x, &gat)).collect::<Result<_, _>>()?;
                gens[g.level as usize][g.degree].push(hypercoh_core::homalg::vector::from_dense(&v));
            }
        }
        let steps = (0..=max.max(0))
            .map(|k| {
                (0..=top)
                    .map(|n| {
                        if k == 0 {
                            Subspace::full(c.dim(n))
                        } else {
                            Subspace::span(c.dim(n), (k as usize..gens.len()).flat_map(|l| gens[l][n].iter().cloned()))
                        }
                    })
                    .collect()
            })
            .collect();
        (0, steps)
    };
    FilteredComplex::new(c.clone(), min, steps).map_err(core(at))
}

fn operad<F: Coefficients>(s: &OperadSpec) -> Result<DgOperad<F>, CliError> {
    let cap = s.cap;
    match (&s.builtin, &s.carrier) {
        (Some(b), None) if s.generators.is_empty() => match b.as_str() {
            "com" => Ok(DgOperad::com(cap)),
            "ucom" => Ok(DgOperad::ucom(cap)),
            "ass" => Ok(DgOperad::ass(cap)),
            other => Err(invalid("operad.builtin", format!("unknown operad `{other}` (com, ucom, ass)"))),
        },
        (None, Some(c)) => {
            let a: CochainComplex<F> = complex_of(c, "operad.carrier")?;
            let end = endomorphism_operad(&a, cap).map_err(core("operad"))?;
            let top = a.top_degree();
            let mut gens = Vec::new();
            for (i, g) in s.generators.iter().enumerate() {
                let at = format!("operad.generators[{i}]");
                if g.arity > cap {
                    return Err(invalid(at, format!("arity {} exceeds the cap {cap}", g.arity)));
                }
                let factors: Vec<&[usize]> = (0..g.arity).map(|_| a.dims()).collect();
                let layout = MultiTensorLayout::new(&factors);
                let blocks = (0..=top)
                    .map(|k| {
                        let rows = if k + g.degree <= top { a.dim(k + g.degree) } else { 0 };
                        let cols = if k < layout.dims().len() { layout.dim(k) } else { 0 };
                        g.blocks.get(k).map_or(Ok(Matrix::zeros(rows, cols)), |m| matrix::<F>(m, rows, cols, &format!("{at}.blocks[{k}]")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let coords = end
                    .coordinates_of_map(g.arity, g.degree, |parts| {
                        let k: usize = parts.iter().map(|p| p.0).sum();
                        if blocks[k].nrows() == 0 {
                            return Vec::new();
                        }
                        blocks[k].column(layout.pos(parts))
                    })
                    .ok_or_else(|| invalid(&at, "a degree-0 generator must be a chain map"))?;
                gens.push((g.arity, g.degree, coords));
            }
            let name = s.name.clone().unwrap_or_else(|| "generated".into());
            end.operad.generated_suboperad(&name, &gens).map_err(core("operad"))
        }
        _ => Err(invalid("operad", "give either `builtin`, or `carrier` with `generators`")),
    }
}

/// The monotone map described by a map file, from `site`.
pub fn monotone_map(site: &PosetSite, doc: &MapDocument) -> Result<MonotoneMap, CliError> {
    let target = poset(&doc.target, "target")?;
    let mut images = Vec::with_capacity(site.len());
    for x in 0..site.len() {
        let name = site.name(x);
        let y = doc.map.get(name).ok_or_else(|| invalid("map", format!("no image for `{name}`")))?;
        images.push(element(&target, y, &format!("map.{name}"))?);
    }
    if let Some(extra) = doc.map.keys().find(|k| site.index_of(k).is_none()) {
        return Err(invalid("map", format!("unknown source element `{extra}`")));
    }
    MonotoneMap::new(site.clone(), target, images).map_err(core("map"))
}
