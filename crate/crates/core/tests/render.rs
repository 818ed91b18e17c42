use mpp_core::graph::{make_grid, Graph};
use mpp_core::instance::{parse_instance, Instance};
use mpp_core::plan::Plan;
use mpp_core::render::{ascii_frames, render, svg_frames, Format};

/// 2x3 grid whose centre-bottom cell is removed.
fn notched() -> Instance {
    let text = "mpp 1\nvertices 5\nedges 4\n0 1\n0 3\n1 2\n2 4\nrobots 2\n0 1\n4 4\ngrid 2 3\nremoved 1\n4\n";
    parse_instance(text).unwrap()
}

#[test]
fn ascii_grid_with_removed_cell() {
    let plan = Plan::new(vec![vec![0, 1], vec![4, 4]]).unwrap();
    let frames = ascii_frames(&plan, &notched());
    assert_eq!(frames, vec!["t=0\n0 . .\n. # 1\n", "t=1\n. 0 .\n. # 1\n"]);
}

#[test]
fn ascii_without_layout_is_one_row() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let inst = Instance::new(g, vec![0, 1], vec![1, 2]).unwrap();
    let plan = Plan::new(vec![vec![0, 1], vec![1, 2]]).unwrap();
    assert_eq!(ascii_frames(&plan, &inst), vec!["t=0\n0 1 .\n", "t=1\n. 0 1\n"]);
}

#[test]
fn wide_indices_are_right_aligned() {
    let g = make_grid(1, 38);
    let starts: Vec<usize> = (0..37).collect();
    let inst = Instance::new(g, starts.clone(), starts.clone()).unwrap();
    let frame = &ascii_frames(&Plan::stationary(&starts), &inst)[0];
    let row = frame.lines().nth(1).unwrap();
    assert!(row.starts_with(" 0  1  2"));
    assert!(row.ends_with(" z 10  ."));
    assert_eq!(row.len(), 38 * 3 - 1);
}

#[test]
fn svg_frames_follow_the_plan() {
    let plan = Plan::new(vec![vec![0, 1, 2], vec![4, 4, 4]]).unwrap();
    let inst = Instance::new(notched().graph().clone(), vec![0, 4], vec![2, 4]).unwrap();
    let frames = svg_frames(&plan, &inst);
    assert_eq!(frames.len(), 3);
    for (t, f) in frames.iter().enumerate() {
        assert!(f.starts_with("<svg "));
        assert!(f.ends_with("</svg>\n"));
        assert!(f.contains(&format!("<title>t={t}</title>")));
        assert_eq!(f.matches("<rect ").count(), 6);
        assert_eq!(f.matches("fill=\"#404040\"").count(), 1);
        assert_eq!(f.matches("<text ").count(), 2);
        let arrows = f.matches("marker-end").count();
        assert_eq!(arrows, usize::from(t < 2));
    }
    assert_eq!(render(&plan, &inst, Format::Svg), frames);
    assert_eq!(render(&plan, &inst, Format::Ascii), ascii_frames(&plan, &inst));
}

#[test]
fn svg_without_layout_draws_edges() {
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let inst = Instance::new(g, vec![0], vec![3]).unwrap();
    let plan = Plan::new(vec![vec![0, 1, 2, 3]]).unwrap();
    let frames = svg_frames(&plan, &inst);
    assert_eq!(frames.len(), 4);
    assert!(frames.iter().all(|f| f.matches("stroke=\"#999999\"/>").count() == 3));
    assert!(frames.iter().all(|f| !f.contains("<rect ")));
}
