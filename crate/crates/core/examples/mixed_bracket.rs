//! The bracket on forms-valued multivectors near the zero section.

use leafnorm::multivector::{DiffForm, Multivector};
use leafnorm::omega::{dilation_formal, ds_n, euler, gamma_s, jet_n, ltimes_bracket, MixedElement};
use leafnorm::symbolic::{ChartContext, RatFunc};

fn main() -> leafnorm::Result<()> {
    let ctx = ChartContext::new(&["u", "v"], &["y"], &[] as &[&str])?;
    let u = RatFunc::var_named(&ctx, "u")?;
    let y = RatFunc::var_named(&ctx, "y")?;

    // gamma_S acts on forms on S as the de Rham differential.
    let w = MixedElement::from_form(&DiffForm::basis(&ctx, &[1]).scale(&u.mul(&u)))?;
    println!("[gamma_S, u^2 dv] = {}", ltimes_bracket(&gamma_s(&ctx), &w)?);

    // A form tensor a vertical vector field.
    let a = MixedElement::tensor(
        &DiffForm::basis(&ctx, &[0]),
        &Multivector::basis(&ctx, &[2]).scale(&y.mul(&y)),
    )?;
    println!("a                 = {a}");
    println!("[a, a]            = {}", ltimes_bracket(&a, &a)?);
    println!("[E, a]            = {}", ltimes_bracket(&euler(&ctx), &a)?);

    let (scaled, _t) = dilation_formal(&a)?;
    println!("phi_t(a)          = {scaled}");
    let g = gamma_s(&ctx).add(&a);
    println!("ds_0(g)           = {}", ds_n(&g, 0)?);
    println!("j^1(g)            = {}", jet_n(&g, 1)?);
    Ok(())
}
