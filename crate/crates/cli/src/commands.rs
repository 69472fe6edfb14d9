use std::fmt::Write as _;
use std::str::FromStr;

use chevalley::classical::{FormFamily, FormSpec};
use chevalley::counting::{
    conj_classes, grassmann_count, order_formula, projective_order, sylow_p_count, torus_centralizer_normalizer,
    Family, GroupSpec,
};
use chevalley::euclid::{iwasawa, platonic_enumerate};
use chevalley::field::{etale_conj_norm, Domain, FieldDescriptor, FieldScalar};
use chevalley::genword::{bruhat, elem_decompose, gauss_reduce};
use chevalley::jordan::jordan_decompose;
use chevalley::matrix::{regular_rep, split_matrix_literal, trace_form_gram, Matrix};
use chevalley::quat::{
    construct, embed_m2k, embedding_field, is_split, zero_divisor, Construction, QuaternionAlgebra, SplitResult,
};
use chevalley::rootdatum::{summarize, RootType};
use chevalley::sl2z::{
    free_product_check, reduce_to_fundamental_domain, relations_check, su_decompose, IntMatrix2, RationalPoint,
};
use chevalley::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::{Command, FamilyArg, QuatAction, Sl2zAction};

/// A command's JSON payload and its text rendering.
pub struct Output {
    pub payload: Value,
    pub text: String,
}

impl Output {
    fn new(payload: Value, text: impl Into<String>) -> Self {
        Output { payload, text: text.into() }
    }
}

pub fn name(command: &Command) -> &'static str {
    match command {
        Command::Order { .. } => "order",
        Command::Grassmann { .. } => "grassmann",
        Command::Sylow { .. } => "sylow",
        Command::Classes { .. } => "classes",
        Command::Centralizer { .. } => "centralizer",
        Command::Decompose { .. } => "decompose",
        Command::Bruhat { .. } => "bruhat",
        Command::Jordan { .. } => "jordan",
        Command::Classical { .. } => "classical",
        Command::Rootdatum { .. } => "rootdatum",
        Command::Quat { .. } => "quat",
        Command::Foursquare { .. } => "foursquare",
        Command::Sl2z { .. } => "sl2z",
        Command::Iwasawa { .. } => "iwasawa",
        Command::Platonic => "platonic",
        Command::Tracefield { .. } => "tracefield",
    }
}

pub fn run(command: &Command, field: &str) -> Result<Output> {
    let domain = || FieldDescriptor::parse(field);
    match command {
        Command::Order { family, n, q, projective } => order(spec(*family, *n, *q), *projective),
        Command::Grassmann { n, r, q } => {
            let count = grassmann_count(*n, *r, *q)?;
            Ok(Output::new(json!({ "count": count_value(&count) }), count.to_string()))
        }
        Command::Sylow { n, p } => {
            let count = sylow_p_count(*n, *p)?;
            Ok(Output::new(json!({ "count": count_value(&count) }), count.to_string()))
        }
        Command::Classes { family, n, q } => classes(spec(*family, *n, *q)),
        Command::Centralizer { partition, q } => {
            let t = torus_centralizer_normalizer(partition, *q)?;
            let payload = json!({
                "partition": partition,
                "q": q,
                "centralizer": t.centralizer,
                "normalizer": t.normalizer,
                "weyl": t.weyl,
            });
            let text = format!("centralizer {}\nnormalizer {}\nweyl {}", t.centralizer, t.normalizer, t.weyl);
            Ok(Output::new(payload, text))
        }
        Command::Decompose { matrix, gauss } => decompose(&Matrix::parse(matrix, &domain()?)?, *gauss),
        Command::Bruhat { matrix } => {
            let b = bruhat(&Matrix::parse(matrix, &domain()?)?)?;
            let w: Vec<usize> = b.w.iter().map(|i| i + 1).collect();
            let payload = json!({ "b1": b.b1.to_json(), "w": w, "b2": b.b2.to_json() });
            let text = format!("b1 = {}\nw = {}\nb2 = {}", b.b1, join(&w, " "), b.b2);
            Ok(Output::new(payload, text))
        }
        Command::Jordan { matrix } => {
            let jd = jordan_decompose(&Matrix::parse(matrix, &domain()?)?)?;
            let payload = json!({
                "S": jd.s.to_json(),
                "N": jd.n.to_json(),
                "U": jd.u.as_ref().map(|u| u.to_json()),
                "p": jd.p_poly.to_string(),
                "q": jd.q_poly.to_string(),
            });
            let mut text = format!("S = {}\nN = {}", jd.s, jd.n);
            if let Some(u) = &jd.u {
                let _ = write!(text, "\nU = {u}");
            }
            let _ = write!(text, "\np(X) = {}\nq(X) = {}", jd.p_poly, jd.q_poly);
            Ok(Output::new(payload, text))
        }
        Command::Classical { family, l, member } => classical(&domain()?, family, *l, member.as_deref()),
        Command::Rootdatum { ty, n } => {
            let ty = RootType::parse(ty, *n)?;
            let summary = summarize(ty)?;
            let mut payload = serde_json::to_value(&summary).expect("serializable");
            payload["type"] = json!(ty.to_string());
            let text = format!(
                "type {ty}\nrank {}\nroots {:?}\ncoroots {:?}\nweyl order {}\ncartan {:?}",
                summary.rank, summary.roots, summary.coroots, summary.weyl_order, summary.cartan
            );
            Ok(Output::new(payload, text))
        }
        Command::Quat { action, base, a, b, bound } => {
            let domain = FieldDescriptor::parse(base.as_deref().unwrap_or(field))?;
            let (a, b) = (FieldScalar::parse(a, &domain)?, FieldScalar::parse(b, &domain)?);
            let alg = QuaternionAlgebra::new(a, b)?;
            match action {
                QuatAction::Split => quat_split(&domain, &alg, *bound),
                QuatAction::Table => Ok(quat_table(&alg)),
                QuatAction::Embed => quat_embed(&alg),
            }
        }
        Command::Foursquare { n } => {
            let r = chevalley::quat::four_square(*n);
            let text = format!("{n} = {}", r.iter().map(|t| format!("{t}²")).collect::<Vec<_>>().join("+"));
            Ok(Output::new(json!({ "n": n, "squares": r }), text))
        }
        Command::Sl2z { action } => sl2z(action),
        Command::Iwasawa { matrix } => {
            let a = parse_real_matrix(matrix)?;
            let d = iwasawa(&a)?;
            let payload = json!({ "p": real_rows(&d.p), "s": real_rows(&d.s) });
            let text = format!("P = {}\nS = {}", real_text(&d.p), real_text(&d.s));
            Ok(Output::new(payload, text))
        }
        Command::Platonic => {
            let solids = platonic_enumerate();
            let mut text = String::from("n m   v  e  f  name");
            for s in &solids {
                let _ = write!(text, "\n{} {} {:>3} {:>2} {:>2}  {}", s.n, s.m, s.v, s.e, s.f, solid_name(s.n, s.m));
            }
            Ok(Output::new(json!({ "solids": solids }), text))
        }
        Command::Tracefield { element } => tracefield(&domain()?, element.as_deref()),
    }
}

fn spec(family: FamilyArg, n: usize, q: u64) -> GroupSpec {
    GroupSpec { family: if let FamilyArg::Gl = family { Family::GL } else { Family::SL }, n, q }
}

fn count_value(x: &BigUint) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Rounds to 12 significant digits and normalizes `-0`.
fn round12(x: f64) -> f64 {
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn real_rows(m: &Matrix<f64>) -> Vec<Vec<f64>> {
    m.to_rows().iter().map(|r| r.iter().map(|&x| round12(x)).collect()).collect()
}

fn real_text(m: &Matrix<f64>) -> String {
    let rows: Vec<String> = real_rows(m).iter().map(|r| format!("[{}]", join(r, ","))).collect();
    format!("[{}]", rows.join(","))
}

fn parse_real(text: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("bad real number '{text}'"));
    match text.split_once('/') {
        Some((num, den)) => {
            let (num, den): (f64, f64) = (num.parse().map_err(|_| bad())?, den.parse().map_err(|_| bad())?);
            if den == 0.0 {
                return Err(Error::DivisionByZero);
            }
            Ok(num / den)
        }
        None => text.parse().map_err(|_| bad()),
    }
}

fn parse_real_matrix(text: &str) -> Result<Matrix<f64>> {
    let rows = split_matrix_literal(text)?
        .iter()
        .map(|r| r.iter().map(|e| parse_real(e)).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, 1.0)
}

fn order(spec: GroupSpec, projective: bool) -> Result<Output> {
    let order = if projective { projective_order(&spec)? } else { order_formula(&spec)? };
    Ok(Output::new(json!({ "order": count_value(&order) }), order.to_string()))
}

fn classes(spec: GroupSpec) -> Result<Output> {
    let table = conj_classes(&spec)?;
    let classes: Vec<Value> = table.classes.iter().map(|c| json!({ "rep": c.rep.to_json(), "size": c.size })).collect();
    let width = table.classes.iter().map(|c| c.size.to_string().len()).max().unwrap_or(4).max(4);
    let mut text = format!("order {}\nclasses {}\n{:>width$}  representative", table.order, classes.len(), "size");
    for c in &table.classes {
        let _ = write!(text, "\n{:>width$}  {}", c.size, c.rep);
    }
    Ok(Output::new(json!({ "classes": classes, "order": table.order }), text))
}

fn decompose(m: &Matrix<FieldScalar>, gauss: bool) -> Result<Output> {
    if gauss {
        let r = gauss_reduce(m)?;
        let payload = json!({
            "left": r.left.to_string(),
            "right": r.right.to_string(),
            "diag": r.diag.to_json(),
        });
        let word = |w: &chevalley::genword::GeneratorWord<FieldScalar>| {
            if w.is_empty() {
                "I".to_string()
            } else {
                w.to_string()
            }
        };
        let text = format!("left: {}\nright: {}\ndiag = {}", word(&r.left), word(&r.right), r.diag);
        return Ok(Output::new(payload, text));
    }
    let w = elem_decompose(m)?;
    let text = if w.is_empty() { "I".to_string() } else { w.to_string() };
    Ok(Output::new(json!({ "word": w.to_string(), "length": w.len() }), text))
}

fn classical(domain: &Domain, family: &str, l: usize, member: Option<&str>) -> Result<Output> {
    let family = FormFamily::parse(family)?;
    let form = FormSpec::new(family, l, FieldScalar::one(domain))?;
    let basis = form.lie_basis_labeled();
    let labels: Vec<String> = basis.iter().map(|(label, _)| label.clone()).collect();
    let dump: Vec<Value> = basis.iter().map(|(label, m)| json!({ "label": label, "matrix": m.to_json() })).collect();
    let mut payload = json!({
        "family": family.to_string(),
        "l": l,
        "size": form.size(),
        "j": form.j().to_json(),
        "lie_dimension": labels.len(),
        "lie_basis": dump,
        "char_two_warning": form.char_two_warning(),
    });
    let mut text =
        format!("{family} l = {l}\nJ = {}\nlie dimension {}\nbasis {}", form.j(), labels.len(), labels.join(" "));
    if let Some(m) = member {
        let m = Matrix::parse(m, domain)?;
        let is_member = form.group_member(&m)?;
        let factor = match form.similitude_factor(&m) {
            Ok(lambda) => Some(lambda.to_string()),
            Err(Error::NotSimilitude) => None,
            Err(e) => return Err(e),
        };
        payload["member"] = json!({ "group_member": is_member, "similitude_factor": factor });
        let _ = write!(text, "\nmember {is_member}\nsimilitude factor {}", factor.as_deref().unwrap_or("none"));
    }
    Ok(Output::new(payload, text))
}

const BASIS_NAMES: [&str; 4] = ["1", "i", "j", "ij"];

fn quat_split(domain: &Domain, alg: &QuaternionAlgebra<FieldScalar>, bound: Option<i64>) -> Result<Output> {
    let (a, b) = (alg.a().clone(), alg.b().clone());
    let canonical = alg.structure_constants();
    let methods = [
        Construction::GradedTensor,
        Construction::Doubling,
        Construction::Clifford,
        Construction::Cyclic,
        Construction::CrossProduct { c: a.clone() * b.clone() },
    ];
    let mut agree = serde_json::Map::new();
    let mut text = format!("algebra ({a},{b}) over {domain}");
    for method in &methods {
        let same = construct(method, &a, &b)? == canonical;
        agree.insert(method.name().to_string(), json!(same));
        let _ = write!(text, "\n{} {}", method.name(), if same { "agrees" } else { "differs" });
    }
    let split = match is_split(alg, bound)? {
        SplitResult::Split { x, y, z } => {
            let u = zero_divisor(alg, &x, &y, &z);
            let coords: Vec<String> = u.coords().iter().map(ToString::to_string).collect();
            let _ = write!(text, "\nsplit: a·{x}² + b·{y}² = {z}²\nzero divisor {}", coords.join(" "));
            json!({ "status": "split", "x": x.to_string(), "y": y.to_string(), "z": z.to_string(), "zero_divisor": coords })
        }
        SplitResult::Division => {
            text.push_str("\ndivision algebra");
            json!({ "status": "division" })
        }
        SplitResult::Unknown => {
            text.push_str("\nno conic point up to the search bound");
            json!({ "status": "unknown" })
        }
    };
    let payload = json!({ "a": a.to_string(), "b": b.to_string(), "constructions_agree": agree, "split": split });
    Ok(Output::new(payload, text))
}

fn quat_table(alg: &QuaternionAlgebra<FieldScalar>) -> Output {
    let mut rows = Vec::new();
    let mut text = format!("multiplication table of ({},{})", alg.a(), alg.b());
    for (r, left) in BASIS_NAMES.iter().enumerate() {
        let mut row = Vec::new();
        for (s, right) in BASIS_NAMES.iter().enumerate() {
            let product = alg.basis(r) * alg.basis(s);
            let coords: Vec<String> = product.coords().iter().map(ToString::to_string).collect();
            let _ = write!(text, "\n{left} * {right} = {product}");
            row.push(coords);
        }
        rows.push(row);
    }
    let payload = json!({ "a": alg.a().to_string(), "b": alg.b().to_string(), "basis": BASIS_NAMES, "products": rows });
    Output::new(payload, text)
}

fn quat_embed(alg: &QuaternionAlgebra<FieldScalar>) -> Result<Output> {
    let k = embedding_field(alg)?;
    let mut images = serde_json::Map::new();
    let mut text = format!("embedding into M_2({k})");
    for (r, name) in BASIS_NAMES.iter().enumerate() {
        let m = embed_m2k(&alg.basis(r))?;
        let _ = write!(text, "\n{name} -> {m}");
        images.insert(name.to_string(), json!(m.to_json()));
    }
    Ok(Output::new(json!({ "field": k.to_string(), "images": images }), text))
}

fn sl2z(action: &Sl2zAction) -> Result<Output> {
    match action {
        Sl2zAction::Decompose { matrix } => {
            let m = IntMatrix2::parse(matrix)?;
            let w = su_decompose(&m)?;
            let payload = json!({ "matrix": m.to_string(), "word": w.to_string(), "syllables": w.syllables.len() });
            Ok(Output::new(payload, w.to_string()))
        }
        Sl2zAction::Reduce { x, y } => {
            let parse = |s: &str| BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad rational '{s}'")));
            let z = RationalPoint::new(parse(x)?, parse(y)?)?;
            let r = reduce_to_fundamental_domain(&z)?;
            let steps: Vec<String> = r.steps.iter().map(ToString::to_string).collect();
            let g = r.matrix();
            let payload = json!({
                "point": { "x": r.point.x.to_string(), "y": r.point.y.to_string() },
                "steps": steps,
                "matrix": g.to_string(),
            });
            let text = format!(
                "{z} -> {}\nsteps {}\nmatrix {g}",
                r.point,
                if steps.is_empty() { "none".into() } else { steps.join(" ") }
            );
            Ok(Output::new(payload, text))
        }
        Sl2zAction::Relations => {
            let report = relations_check();
            let free = free_product_check(8);
            let text = format!(
                "S^2 = -I: {}\n(SU)^3 = -I: {}\nS^4 = I: {}\nU^k != I for 1 <= k <= {}: {}\nfree product words checked: {}, counterexample: {}",
                report.s_squared_is_minus_identity,
                report.su_cubed_is_minus_identity,
                report.s_fourth_is_identity,
                report.max_power,
                report.infinite_order_powers,
                free.words_checked,
                free.counterexample.as_deref().unwrap_or("none"),
            );
            let payload = json!({ "relations": report, "free_product": free });
            Ok(Output::new(payload, text))
        }
    }
}

fn solid_name(n: u32, m: u32) -> &'static str {
    match (n, m) {
        (3, 3) => "tetrahedron",
        (4, 3) => "cube",
        (3, 4) => "octahedron",
        (5, 3) => "dodecahedron",
        (3, 5) => "icosahedron",
        _ => "unknown",
    }
}

fn tracefield(domain: &Domain, element: Option<&str>) -> Result<Output> {
    let gram = trace_form_gram(domain)?;
    let nondegenerate = !gram.det()?.is_zero();
    let mut payload = json!({ "field": domain.to_string(), "gram": gram.to_json(), "nondegenerate": nondegenerate });
    let mut text = format!("gram = {gram}\nnondegenerate {nondegenerate}");
    if let Some(text_x) = element {
        let x = FieldScalar::parse(text_x, domain)?;
        let l = regular_rep(&x)?;
        let (_, norm, trace) = etale_conj_norm(&x)?;
        payload["element"] = json!({
            "value": x.to_string(),
            "regular_rep": l.to_json(),
            "norm": norm.to_string(),
            "trace": trace.to_string(),
        });
        let _ = write!(text, "\nl({x}) = {l}\nnorm {norm}\ntrace {trace}");
    }
    Ok(Output::new(payload, text))
}
