//! Arithmetic in F_9 = F_3[t]/(t^2+1) and in Z_9 viewed over Z_3.

use gq_ldpc::algebra::{FieldCtx, RingCtx};

fn main() -> gq_ldpc::Result<()> {
    let f = FieldCtx::new(3)?;
    let t = f.generator_t();
    println!("F_{} over F_{} with modulus {}", f.order(), f.q(), f.modulus_string());
    println!("t*t = {}", f.mul(t, t));
    println!("t^q = {}", f.frobenius(t));
    println!("1/t = {}", f.inv(t)?);
    println!("subfield: {:?}", f.subfield_elements());
    for y in 0..f.order() {
        print!("{} ", f.trace_term(1, y)?);
    }
    println!("<- y + y^q for every y");

    let r = RingCtx::new(3)?;
    println!("Z_9: 5^3 mod 9 = {}, trace term of (1, 5) = {}", r.pow_n(5), r.trace_term(1, 5));
    Ok(())
}
