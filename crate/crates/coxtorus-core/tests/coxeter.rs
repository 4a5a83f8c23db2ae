use coxtorus_core::coxeter::{coxeter_system, CoxeterType, Side};

fn sys(s: &str) -> coxtorus_core::coxeter::CoxeterSystem {
    coxeter_system(s.parse::<CoxeterType>().unwrap()).unwrap()
}

#[test]
fn orders_and_root_counts() {
    for (name, roots, order) in [
        ("A2", 6, 6u64),
        ("B3", 18, 48),
        ("G2", 12, 12),
        ("H3", 30, 120),
        ("H4", 120, 14400),
        ("F4", 48, 1152),
        ("E6", 72, 51840),
        ("E8", 240, 696729600),
        ("I2(7)", 14, 14),
        ("D5", 40, 1920),
    ] {
        let s = sys(name);
        assert_eq!(s.nroots(), roots, "{}", name);
        assert_eq!(s.order, order, "{}", name);
    }
}

#[test]
fn table_enumerates() {
    let s = sys("H3");
    let t = s.table().unwrap();
    assert_eq!(t.order(), 120);
    assert_eq!(t.length(t.order() - 1), 15);
    assert_eq!(t.conjugacy_classes().len(), 10);
    let a = t.parabolic_cosets(&[0], Side::Left);
    assert_eq!(a.len(), 60);
}
