//! Arithmetic in GF(8) and in its quadratic extension GF(64).

use umconv::galois::{ExtField, Field, FiniteField};

fn main() -> umconv::Result<()> {
    let f = Field::new(2, 3, Some(&[1, 1, 0, 1]))?;
    let t = f.theta();
    println!("GF({}) with modulus encoding {}, theta = {t}", f.q(), f.modulus_encoding());
    for i in 0..7 {
        println!("theta^{i} = {}", f.pow(t, i)?);
    }
    println!("inverse of 5 is {}", f.inv(5)?);

    let e = ExtField::new(&f, None, None)?;
    let beta = e.beta();
    println!("beta = {beta} has order {} in GF({})", f.q() + 1, f.q() * f.q());
    println!("beta^q = conj(beta) = {} (decomposes as {:?})", e.conj(beta), e.decompose(e.conj(beta)));
    println!("beta * beta^q = {}", e.mul(beta, e.conj(beta)));
    Ok(())
}
