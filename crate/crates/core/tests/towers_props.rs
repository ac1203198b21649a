mod common;

use qci::fdalgebra::{Dimension, FdAlgebra};
use qci::modules::hom_space;
use qci::towers::{
    chain_steps, graded_endomorphism_algebra, restrict, tensor_module, verify_end_tensor, verify_freeness, EndKind,
    Generator, SubalgebraInclusion,
};
use qci::{FdModule, Field, Qci, Scalar, Vector};

fn q(a: u32) -> Field {
    Field::cyclotomic(a).unwrap()
}

/// Structure constants of `A^op`.
fn opposite(a: &FdAlgebra) -> FdAlgebra {
    let d = a.dim();
    let s = (0..d).map(|i| (0..d).map(|j| a.structure_constant(j, i).clone()).collect()).collect();
    FdAlgebra::new(a.field(), s).unwrap()
}

/// Untwisted `A ⊗ B` on the basis `a_i ⊗ b_j`, index `i·dim B + j`.
fn tensor(a: &FdAlgebra, b: &FdAlgebra) -> FdAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let f = a.field();
    let s: Vec<Vec<Vector>> = (0..da * db)
        .map(|x| {
            (0..da * db)
                .map(|y| {
                    let ca = a.structure_constant(x / db, y / db);
                    let cb = b.structure_constant(x % db, y % db);
                    let mut v = vec![f.zero(); da * db];
                    for (p, s) in ca.iter().enumerate() {
                        for (r, t) in cb.iter().enumerate() {
                            if !s.is_zero() && !t.is_zero() {
                                v[p * db + r] = s * t;
                            }
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    FdAlgebra::new(f, s).unwrap()
}

/// Path algebra of `1 → 2 → ... → m` as upper triangular matrices.
fn incidence_chain(f: &Field, m: usize) -> FdAlgebra {
    let units: Vec<(usize, usize)> = (0..m).flat_map(|r| (r..m).map(move |c| (r, c))).collect();
    let idx = |r: usize, c: usize| units.iter().position(|&u| u == (r, c)).unwrap();
    let s = units
        .iter()
        .map(|&(r1, c1)| {
            units
                .iter()
                .map(|&(r2, c2)| {
                    let mut v = vec![f.zero(); units.len()];
                    if c1 == r2 {
                        v[idx(r1, c2)] = f.one();
                    }
                    v
                })
                .collect()
        })
        .collect();
    FdAlgebra::new(f, s).unwrap()
}

fn end_of_generator(g: &Generator, kind: EndKind) -> FdAlgebra {
    graded_endomorphism_algebra(g.graded(), kind).unwrap().with_idempotents(&g.summand_projections()).unwrap().algebra
}

#[test]
fn known_global_dimensions() {
    let f = q(2);
    assert_eq!(incidence_chain(&f, 1).global_dimension(4).unwrap().value, Dimension::Exact(0));
    for m in 2..=4 {
        assert_eq!(incidence_chain(&f, m).global_dimension(6).unwrap().value, Dimension::Exact(1));
    }
    assert_eq!(FdAlgebra::matrix_algebra(&f, 3).global_dimension(4).unwrap().value, Dimension::Exact(0));
    assert_eq!(FdAlgebra::truncated_polynomial(&f, 3).global_dimension(5).unwrap().value, Dimension::AtLeast(5));
    // gldim(A ⊗ B) = gldim A + gldim B for these split algebras.
    let a2 = incidence_chain(&f, 2);
    assert_eq!(tensor(&a2, &a2).global_dimension(6).unwrap().value, Dimension::Exact(2));
    let a3 = incidence_chain(&f, 3);
    assert_eq!(tensor(&tensor(&a2, &a3), &a2).global_dimension(6).unwrap().value, Dimension::Exact(3));
}

#[test]
fn gldim_is_left_right_symmetric() {
    for a in [2u32, 3] {
        let f = q(a);
        let g = Generator::auslander_n1(&f, a).unwrap();
        let full = end_of_generator(&g, EndKind::Full);
        let gl = full.global_dimension(6).unwrap().value;
        assert_eq!(gl, Dimension::Exact(2), "a = {a}");
        assert_eq!(opposite(&full).global_dimension(6).unwrap().value, gl);
    }
}

#[test]
fn auslander_generator_n1_has_gldim_two() {
    for a in [2u32, 3] {
        let f = q(a);
        let g = Generator::auslander_n1(&f, a).unwrap();
        assert!(g.splits());
        let full = end_of_generator(&g, EndKind::Full);
        let r = full.global_dimension(6).unwrap();
        assert_eq!(r.value, Dimension::Exact(2));
        assert!(r.simples_one_dimensional);
        assert_eq!(full.dim() as u32, (1..=a).map(|i| (1..=a).map(|j| i.min(j)).sum::<u32>()).sum::<u32>());
    }
}

/// pd of the simple at summand (s, t) is at most pd(S_s) + pd(T_t).
#[test]
fn tensor_simples_pd_bound() {
    let f = q(2);
    let g1 = Generator::auslander_n1(&f, 2).unwrap();
    let qq = f.primitive_root_of_unity(2).unwrap();
    let g = Generator::tensor(&g1, &g1, &[qq]).unwrap();
    for kind in [EndKind::Graded, EndKind::Full] {
        let small = end_of_generator(&g1, kind).global_dimension(8).unwrap().projective_dimensions;
        let big = end_of_generator(&g, kind).global_dimension(8).unwrap();
        assert!(big.simples_one_dimensional);
        let k = small.len();
        for (idx, pd) in big.projective_dimensions.iter().enumerate() {
            let bound = small[idx / k].value() + small[idx % k].value();
            assert!(pd.is_exact() && pd.value() <= bound, "{kind:?} {idx}: {pd} > {bound}");
        }
    }
}

#[test]
fn end_algebra_of_tensor_is_twisted_tensor() {
    let f = q(2);
    let g1 = Generator::auslander_n1(&f, 2).unwrap();
    let qq = f.primitive_root_of_unity(2).unwrap();
    let g = Generator::tensor(&g1, &g1, std::slice::from_ref(&qq)).unwrap();
    for kind in [EndKind::Graded, EndKind::Full] {
        let e1 = graded_endomorphism_algebra(g1.graded(), kind).unwrap();
        let big = graded_endomorphism_algebra(g.graded(), kind).unwrap();
        let r = verify_end_tensor(&e1, &e1, &big, g1.graded(), std::slice::from_ref(&qq)).unwrap();
        assert!(r.spans && r.products_match, "{kind:?}");
    }
}

#[test]
fn graded_end_dimension_of_small_generator() {
    let f = q(2);
    let g = Generator::auslander_n1(&f, 2).unwrap();
    assert_eq!(graded_endomorphism_algebra(g.graded(), EndKind::Full).unwrap().dim(), 5);
    assert_eq!(graded_endomorphism_algebra(g.graded(), EndKind::Graded).unwrap().dim(), 3);
}

#[test]
fn tower_steps_mixed_exponents() {
    let f = Field::prime(101).unwrap();
    let mut r = common::rng(5);
    for exps in [vec![2u32, 3], vec![2, 3, 2], vec![2, 3, 2, 3]] {
        let alg = common::random_presentation(&f, &exps, &mut r);
        for (s, l) in chain_steps(alg.n()) {
            let rep = verify_freeness(&alg, &s, &l).unwrap();
            assert!(rep.free, "{s:?} {l:?}");
            assert_eq!(rep.rank, exps[rep.added] as usize);
            let inc = SubalgebraInclusion::new(&alg, &s).unwrap();
            assert!(inc.retraction_is_left_inverse());
        }
    }
}

/// Restricting the regular module to a subalgebra gives a free module of
/// rank dim Λ / dim Λ_S.
#[test]
fn restriction_of_regular_is_free() {
    let f = Field::prime(7).unwrap();
    let alg = Qci::new(&f, vec![2, 3, 2], vec![f.from_i64(2), f.from_i64(3), f.from_i64(4)]).unwrap();
    for s in [vec![0], vec![1], vec![0, 2], vec![1, 2]] {
        let inc = SubalgebraInclusion::new(&alg, &s).unwrap();
        let res = restrict(&FdModule::regular(&alg), &inc).unwrap();
        let rank = alg.dim() / inc.subalgebra().dim();
        let free = FdModule::free(inc.subalgebra(), rank);
        // Free of rank r iff dim Hom(-, simple) = r and dimensions agree.
        let simple = common::simple_module(inc.subalgebra());
        assert_eq!(hom_space(&res, &simple).unwrap().len(), rank);
        assert_eq!(res.dim(), free.dim());
    }
}

#[test]
fn tensor_module_dimensions() {
    let f = Field::prime(5).unwrap();
    let g = Generator::auslander_n1(&f, 2).unwrap();
    let q: Scalar = f.from_i64(-1);
    let m = tensor_module(g.graded(), g.graded(), &[q]).unwrap();
    assert_eq!(m.dim(), 9);
    assert!(m.module().satisfies_relations());
}
