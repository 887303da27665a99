// Group law, point counting and the three-point summation polynomial.

use ellbasis::algebra::{field_make, Fe};
use ellbasis::curve::{semaev3, Curve, Point};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = field_make(5, 1, 0)?;
    let c = Curve::new(&f, Fe(1), Fe(1))?;
    println!("y^2 = x^3 + x + 1 over F_5 has {} points", c.n);
    let (p, q) = (Point::Aff(Fe(0), Fe(1)), Point::Aff(Fe(2), Fe(1)));
    let r = c.point_add(&p, &q)?;
    println!("(0,1) + (2,1) = {r:?}");
    println!("order of (0,1): {}", c.point_order(&p));
    let s3 = semaev3(&f, &c, &Fe(0), &Fe(2), &Fe(3));
    println!("S3(0, 2, 3) = {s3:?}");
    assert_eq!(s3, Fe(0));
    let orders: Vec<u128> = (1..=4).map(|i| c.order_over(i)).collect();
    println!("orders over F_(5^i), i = 1..4: {orders:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("curve_group");
}
