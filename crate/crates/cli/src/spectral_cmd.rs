use hwb_core::ce::{ce_complex, CochainComplex};
use hwb_core::exactlin::ExactMatrix;
use hwb_core::spectral::{abutment, brst_double, check_page_recursion, first_pages, hochschild_serre, page, random_filtered, DoubleComplex, FilteredComplex};
use hwb_core::structures::LieModule;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::inputs;
use crate::report::{cells, compared_cells, Outcome};
use crate::Globals;

pub struct PagesArgs {
    pub count: usize,
    pub top: usize,
    pub max_dim: usize,
    pub levels: usize,
    pub max_page: i64,
}

fn abutment_json(fc: &FilteredComplex) -> Result<(Value, bool), CliError> {
    let a = abutment(fc)?;
    Ok((json!({"r_infinity": a.r_infinity, "e_infinity": a.e_infinity, "cohomology": a.cohomology, "holds": a.holds()}), a.holds()))
}

pub fn pages(args: &PagesArgs, gl: &Globals) -> Result<Outcome, CliError> {
    if args.max_dim == 0 || args.levels == 0 || args.count == 0 {
        return Err(CliError::invalid("--count, --max-dim and --levels must be positive"));
    }
    let mut runs = Vec::new();
    let mut ok = true;
    for i in 0..args.count as u64 {
        let seed = gl.seed.wrapping_add(i);
        let fc = random_filtered(seed, args.top, args.max_dim, args.levels);
        let rec = check_page_recursion(&fc, args.max_page)?;
        let (ab, ab_ok) = abutment_json(&fc)?;
        ok &= rec.holds() && ab_ok;
        let mut run = json!({
            "seed": seed,
            "dims": fc.complex.dims,
            "recursion": {"cells_checked": rec.cells_checked, "failures": rec.failures, "holds": rec.holds()},
            "abutment": ab,
        });
        if args.count == 1 {
            let pgs: Vec<Value> = (0..=args.max_page).map(|r| page(&fc, r).map(|p| cells(&p.dims()))).collect::<Result<_, _>>()?;
            run["pages"] = Value::Array(pgs);
        }
        runs.push(run);
    }
    Ok(Outcome::new(json!({"window": {"max_page": args.max_page}, "complexes": runs}), ok))
}

pub fn hs(g_path: &str, sub: &str, module: Option<&str>, adjoint: bool, coadjoint: bool, max_page: i64) -> Result<Outcome, CliError> {
    let g = inputs::lie(g_path)?;
    let h = inputs::sub(&g, sub)?;
    let (a, kind) = inputs::coefficients(&g, module, adjoint, coadjoint)?;
    let r = hochschild_serre(&g, &h, &a, max_page)?;
    let pages: Vec<Value> = r.pages.iter().map(cells).collect();
    let (ab, _) = abutment_json(&r.filtered)?;
    let e2 = page(&r.filtered, 2)?;
    let out = json!({
        "algebra": {"dim": g.dim(), "basis": g.names()},
        "subalgebra": {"dim": h.dim(), "ideal": g.is_ideal(&h).is_ok()},
        "coefficients": {"kind": kind, "dim": a.dim()},
        "window": {"max_page": max_page},
        "pages": pages,
        "e2": cells(&e2.dims()),
        "e1_check": compared_cells(&r.e1),
        "e2_bottom_row_check": compared_cells(&r.e2_bottom_row.iter().map(|(&p, &v)| ((p, 0), v)).collect()),
        "e2_ideal_check": r.e2_ideal.as_ref().map(compared_cells),
        "abutment": ab,
        "consistent": r.consistent(),
    });
    Ok(Outcome::new(out, r.consistent()))
}

pub fn double(g_path: &str, other: &str) -> Result<Outcome, CliError> {
    let g = inputs::lie(g_path)?;
    let h = inputs::lie(other)?;
    let cg = ce_complex(&g, &LieModule::trivial(&g, 1), g.dim())?.complex;
    let ch = ce_complex(&h, &LieModule::trivial(&h, 1), h.dim())?.complex;
    let dc = DoubleComplex::tensor(&cg, &ch)?;
    let r = first_pages(&dc)?;
    let total = FilteredComplex::trivial(dc.total()).cohomology_dims();
    let (ab1, ok1) = abutment_json(&dc.filtered(1)?)?;
    let (ab2, ok2) = abutment_json(&dc.filtered(2)?)?;
    let out = json!({
        "grid": [dc.grid().0, dc.grid().1],
        "e1_first": compared_cells(&r.e1_first),
        "e1_second": compared_cells(&r.e1_second),
        "e2_first": compared_cells(&r.e2_first),
        "e2_second": compared_cells(&r.e2_second),
        "first_pages_agree": r.agree(),
        "total_cohomology": total,
        "abutment_first": ab1,
        "abutment_second": ab2,
    });
    Ok(Outcome::new(out, r.agree() && ok1 && ok2))
}

/// `C` is the coefficient module placed in degree 0.
pub fn brst(g_path: &str, module: Option<&str>, adjoint: bool, coadjoint: bool) -> Result<Outcome, CliError> {
    let g = inputs::lie(g_path)?;
    let (a, kind) = inputs::coefficients(&g, module, adjoint, coadjoint)?;
    let c = CochainComplex::new(vec![a.dim(), 0], vec![ExactMatrix::zeros(0, a.dim())]);
    let zero: Vec<ExactMatrix> = (0..g.dim()).map(|_| ExactMatrix::zeros(0, 0)).collect();
    let r = brst_double(&g, &c, &[a.actions().to_vec(), zero])?;
    let total = FilteredComplex::trivial(r.double.total()).cohomology_dims();
    let ok = r.h0_total == r.invariants_of_h0;
    let out = json!({
        "coefficients": {"kind": kind, "dim": a.dim()},
        "h0_total": r.h0_total,
        "invariants_of_h0": r.invariants_of_h0,
        "c_acyclic_positive": r.c_acyclic_positive,
        "e1_concentrated": r.e1_concentrated,
        "total_cohomology": total,
        "h0_matches_invariants": ok,
    });
    Ok(Outcome::new(out, ok))
}
