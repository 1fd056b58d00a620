#![allow(dead_code)]

use quiver_hilbert::{Field, Quiver};

pub fn quiver(r: usize, arrows: &[(usize, usize)]) -> Quiver {
    let names: Vec<String> = (0..arrows.len()).map(|k| format!("a{}", k + 1)).collect();
    let edges: Vec<(&str, usize, usize)> = arrows
        .iter()
        .zip(&names)
        .map(|(&(t, h), n)| (n.as_str(), t, h))
        .collect();
    Quiver::from_edges(r, &edges).expect("valid test quiver")
}

pub fn a1() -> Quiver {
    quiver(1, &[])
}
pub fn a2() -> Quiver {
    quiver(2, &[(1, 2)])
}
pub fn a3() -> Quiver {
    quiver(3, &[(1, 2), (2, 3)])
}
pub fn d4() -> Quiver {
    quiver(4, &[(1, 2), (3, 2), (2, 4)])
}
pub fn kronecker() -> Quiver {
    quiver(2, &[(1, 2), (1, 2)])
}
pub fn triangle() -> Quiver {
    quiver(3, &[(1, 2), (2, 3), (1, 3)])
}
pub fn kronecker3() -> Quiver {
    quiver(2, &[(1, 2), (1, 2), (1, 2)])
}

pub fn dynkin_grid() -> Vec<(&'static str, Quiver)> {
    vec![("A1", a1()), ("A2", a2()), ("A3", a3()), ("D4", d4())]
}

pub fn wild_and_affine() -> Vec<(&'static str, Quiver)> {
    vec![("Kronecker", kronecker()), ("triangle", triangle()), ("3-Kronecker", kronecker3())]
}

pub fn grid() -> Vec<(&'static str, Quiver)> {
    let mut v = dynkin_grid();
    v.extend(wild_and_affine());
    v
}

pub fn fields() -> Vec<Field> {
    vec![Field::Rational, Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Prime(7)]
}
