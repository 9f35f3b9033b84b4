//! Files bundled into the binary; order here is the catalog order.

pub(super) const ALGEBRAS: &[(&str, &str)] = &[
    ("C.json", include_str!("../../data/algebras/C.json")),
    ("r1.json", include_str!("../../data/algebras/r1.json")),
    ("mu1.json", include_str!("../../data/algebras/mu1.json")),
    ("mu2.json", include_str!("../../data/algebras/mu2.json")),
    ("lambda2.json", include_str!("../../data/algebras/lambda2.json")),
    ("sl2.json", include_str!("../../data/algebras/sl2.json")),
    ("sl2_plus_C.json", include_str!("../../data/algebras/sl2_plus_C.json")),
    ("diamond.json", include_str!("../../data/algebras/diamond.json")),
    ("R20_0.json", include_str!("../../data/algebras/R20_0.json")),
    ("L2.json", include_str!("../../data/algebras/L2.json")),
    ("lambda2_plus_C.json", include_str!("../../data/algebras/lambda2_plus_C.json")),
    ("mu1_plus_mu1.json", include_str!("../../data/algebras/mu1_plus_mu1.json")),
    ("sl2_plus_C2.json", include_str!("../../data/algebras/sl2_plus_C2.json")),
    ("diamond_plus_C.json", include_str!("../../data/algebras/diamond_plus_C.json")),
    ("W3.json", include_str!("../../data/algebras/W3.json")),
    ("W3tilde.json", include_str!("../../data/algebras/W3tilde.json")),
    ("W3tilde_star.json", include_str!("../../data/algebras/W3tilde_star.json")),
    ("L2_plus_C.json", include_str!("../../data/algebras/L2_plus_C.json")),
    ("R20_0_plus_C.json", include_str!("../../data/algebras/R20_0_plus_C.json")),
    ("lambda2_plus_C2.json", include_str!("../../data/algebras/lambda2_plus_C2.json")),
    ("mu1_plus_mu1_plus_C.json", include_str!("../../data/algebras/mu1_plus_mu1_plus_C.json")),
];

pub(super) const CLAIMS: &str = include_str!("../../data/claims.json");
