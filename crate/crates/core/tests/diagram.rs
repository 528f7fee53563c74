use dotlab::diagram::{ComponentKind, DottedGraph, Host};
use dotlab::{extract, fixtures, LatticePolytope};

fn dg(p: &LatticePolytope) -> DottedGraph {
    extract(p).0
}

fn bounded_totals(g: &DottedGraph) -> Vec<i32> {
    let l = g.labels().unwrap();
    let mut v = l.total[1..].to_vec();
    v.sort();
    v
}

#[test]
fn face_counts() {
    let free = DottedGraph::new(vec![], vec![], vec![(2, 1, Host::Plane)], vec![]).unwrap();
    assert_eq!(free.structure().n_faces(), 2);
    assert_eq!(dg(&fixtures::figure_eight()).structure().n_faces(), 3);
    assert_eq!(dg(&fixtures::thm1_case2()).structure().n_faces(), 4);
    assert_eq!(dg(&fixtures::venn()).structure().n_faces(), 8);
    assert_eq!(DottedGraph::empty().structure().n_faces(), 1);
}

#[test]
fn extraction_of_rectangle() {
    let g = dg(&fixtures::rectangle());
    assert!(g.crossings().is_empty() && g.arcs().is_empty());
    let f = g.free_circles();
    assert_eq!(f.len(), 1);
    assert_eq!((f[0].dots, f[0].sign), (2, 1));
    assert_eq!(dg(&fixtures::rectangle_cw()).free_circles()[0].sign, -1);
}

#[test]
fn extraction_of_case2() {
    let g = dg(&fixtures::thm1_case2());
    assert_eq!(g.crossings().len(), 2);
    assert_eq!(g.arcs().len(), 4);
    let st = g.structure();
    let l = g.labels().unwrap();
    // classify arcs by circle and by whether they lie inside the other circle
    let mut seen = Vec::new();
    for (a, arc) in g.arcs().iter().enumerate() {
        let (fl, fr) = st.strand_faces(a);
        let other = 1 - arc.circle;
        let inside = l.winding[fl][other] != 0;
        assert_eq!(l.winding[fl][other], l.winding[fr][other]);
        seen.push((l.winding[fl][arc.circle] - l.winding[fr][arc.circle], inside, arc.dots));
    }
    seen.sort();
    // C1 is counterclockwise: outside arc 2 dots, inside arc 0
    // C2 clockwise: inside arc 1, outside arc 1
    let mut want = vec![(1, false, 2), (1, true, 0), (1, true, 1), (1, false, 1)];
    want.sort();
    assert_eq!(seen, want);
    assert_eq!(bounded_totals(&g), vec![-1, 0, 1]);
}

#[test]
fn label_examples() {
    let l = dg(&fixtures::rectangle()).labels().unwrap();
    assert_eq!(l.total, vec![0, 1]);
    assert_eq!(bounded_totals(&dg(&fixtures::lens_ccw())), vec![1, 1, 2]);
    assert_eq!(bounded_totals(&dg(&fixtures::figure_eight())), vec![-1, 1]);
    assert_eq!(bounded_totals(&dg(&fixtures::nested())), vec![1, 2]);
}

#[test]
fn venn_extraction_counts() {
    let g = dg(&fixtures::venn());
    assert_eq!(g.crossings().len(), 6);
    assert_eq!(g.arcs().len(), 12);
    assert_eq!(g.structure().n_faces(), 8);
}

#[test]
fn labels_match_winding_on_fixtures() {
    for p in [
        fixtures::rectangle(),
        fixtures::thm1_case1(),
        fixtures::thm1_case2(),
        fixtures::venn(),
        fixtures::chain3(),
        fixtures::figure_eight(),
        fixtures::nested(),
        fixtures::plus(),
    ] {
        let (g, tr) = extract(&p);
        let l = g.labels().unwrap();
        for (f, &probe) in tr.face_probes.iter().enumerate() {
            assert_eq!(l.total[f] as i64, p.winding_number(probe).unwrap(), "face {f}");
        }
    }
}

#[test]
fn dot_conservation() {
    for p in [fixtures::venn(), fixtures::chain3(), fixtures::figure_eight(), fixtures::nested()] {
        assert_eq!(dg(&p).total_dots() as usize, p.dot_count());
    }
}

#[test]
fn adjacent_faces_differ_by_one() {
    for p in [fixtures::venn(), fixtures::chain3(), fixtures::figure_eight()] {
        let g = dg(&p);
        let st = g.structure();
        let l = g.labels().unwrap();
        for s in 0..g.n_strands() {
            let (fl, fr) = st.strand_faces(s);
            assert_eq!(l.total[fl], l.total[fr] + 1);
        }
    }
}

#[test]
fn component_counts() {
    let count = |g: &DottedGraph, k: ComponentKind| {
        let st = g.structure();
        dotlab::diagram::cycles::components(g, &st).into_iter().filter(|w| w.kind == k).count()
    };
    let f8 = dg(&fixtures::figure_eight());
    assert_eq!(count(&f8, ComponentKind::Circle), 0);
    assert_eq!(count(&f8, ComponentKind::Loop), 2);

    let c2 = dg(&fixtures::thm1_case2());
    assert_eq!(count(&c2, ComponentKind::Circle), 2);
    assert_eq!(count(&c2, ComponentKind::Loop), 0);
    assert_eq!(c2.bigon_components().iter().filter(|b| b.lens).count(), 1);
    assert_eq!(count(&c2, ComponentKind::Outermost), 1 + 0);

    let venn = dg(&fixtures::venn());
    assert_eq!(count(&venn, ComponentKind::Circle), 3);

    let rect = dg(&fixtures::rectangle());
    assert_eq!(count(&rect, ComponentKind::Loop), 0);
    assert_eq!(count(&rect, ComponentKind::Bigon), 0);
    assert_eq!(count(&rect, ComponentKind::CrossingIncluding), 1);
    assert_eq!(count(&rect, ComponentKind::Outermost), 1);

    let chain = dg(&fixtures::chain3());
    assert_eq!(chain.bigon_components().iter().filter(|b| b.lens).count(), 2);
}

#[test]
fn lens_coherence_depends_on_orientations() {
    // equal circle orientations run the two lens edges antiparallel: coherent
    let same = dg(&fixtures::lens_ccw()).bigon_components().into_iter().find(|b| b.lens).unwrap();
    assert!(same.coherent);
    // opposite orientations run them parallel: incoherent, and dotted
    let opp = dg(&fixtures::thm1_case2()).bigon_components().into_iter().find(|b| b.lens).unwrap();
    assert!(!opp.coherent);
    assert!(opp.dots >= 1);
}

#[test]
fn outermost_of_two_circles_is_the_union_boundary() {
    let g = dg(&fixtures::thm1_case2());
    let st = g.structure();
    let outer = g.outermost_components();
    assert_eq!(outer.len(), 1);
    // its disk is every bounded face
    assert_eq!(outer[0].disk.len(), st.n_faces() - 1);
    assert!(g.crossing_including_components().iter().all(|w| w.turns.iter().all(|t| !t.convex)));
}

#[test]
fn nested_circles_are_both_outermost() {
    let g = dg(&fixtures::nested());
    assert_eq!(g.outermost_components().len(), 2);
    let f = g.free_circles();
    assert!(f.iter().any(|c| c.host == Host::Inside(0)) || f.iter().any(|c| c.host == Host::Inside(1)));
}

#[test]
fn overlap_examples() {
    // disjoint CCW circle inside a CCW circle: containing label is +1, no overlap
    let g = dg(&fixtures::nested());
    let outer = g.free_circles().iter().position(|f| f.host == Host::Plane).unwrap();
    let circle = |f: usize| g.free_circles()[f].circle;
    let mut second = vec![false; 2];
    second[circle(1 - outer)] = true;
    assert!(g.overlapped_regions(&second).is_empty());
    // the other way round the annulus has first-part label 0, so the literal
    // definition does relate the two disks
    let mut second = vec![false; 2];
    second[circle(outer)] = true;
    assert_eq!(g.overlapped_regions(&second).len(), 1);

    // Case-2: the clockwise circle's disk sticks out into the zero region of
    // the counterclockwise one
    let g = dg(&fixtures::thm1_case2());
    let l = g.labels().unwrap();
    let cw = (0..2).find(|&c| l.winding.iter().any(|w| w[c] == -1)).unwrap();
    let mut split = vec![false; 2];
    split[1 - cw] = true; // first part = clockwise circle
    let rel = g.overlapped_regions(&split);
    assert_eq!(rel.len(), 1);
    assert_eq!(rel[0].label, -1);
    let mut split = vec![false; 2];
    split[cw] = true;
    let rel = g.overlapped_regions(&split);
    assert_eq!(rel.len(), 1);
    assert_eq!(rel[0].label, 1);
}

#[test]
fn canonical_codes() {
    let a = dg(&fixtures::venn());
    let b = dg(&fixtures::venn().translate(5, -3));
    assert_eq!(a.canonical_code(), b.canonical_code());
    let two = DottedGraph::new(vec![], vec![], vec![(2, 1, Host::Plane)], vec![]).unwrap();
    let three = DottedGraph::new(vec![], vec![], vec![(3, 1, Host::Plane)], vec![]).unwrap();
    assert_ne!(two.canonical_code(), three.canonical_code());
    assert_ne!(dg(&fixtures::thm1_case1()).canonical_code(), dg(&fixtures::thm1_case2()).canonical_code());
    let c = a.canonicalize();
    assert_eq!(c.canonical_code(), a.canonical_code());
    assert_eq!(c.canonicalize(), c);
}

#[test]
fn mirror_images_differ() {
    let a = dg(&fixtures::rectangle());
    let b = dg(&fixtures::rectangle_cw());
    assert_ne!(a.canonical_code(), b.canonical_code());
}

#[test]
fn validation_accepts_extractions() {
    for p in [fixtures::venn(), fixtures::chain3(), fixtures::figure_eight(), fixtures::nested()] {
        dg(&p).validate().unwrap();
    }
}
