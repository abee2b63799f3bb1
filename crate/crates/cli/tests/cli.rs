use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fflattice")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn stdpoly() {
    let o = run(&["stdpoly", "-p", "2", "-l", "15"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "x^15+x+1\n"));
    let o = run(&["stdpoly", "-p", "2", "-l", "1"]);
    assert_eq!(stdout(&o), "x+1\n");
    let o = run(&["stdpoly", "-p", "2", "-l", "3", "--format", "machine"]);
    assert_eq!(stdout(&o), "1 1 0 1\n");
    assert_eq!(code(&run(&["stdpoly", "-p", "2", "-l", "2"])), 2);
    assert_eq!(code(&run(&["stdpoly", "-p", "6", "-l", "5"])), 2);
}

#[test]
fn embed() {
    let o = run(&["embed", "-p", "2", "-l", "3", "-m", "3"]);
    assert_eq!(stdout(&o), "P_3 = x^3+x+1\nP_3 = x^3+x+1\nt = x\n");
    let o = run(&["embed", "-p", "2", "-l", "3", "-m", "15", "--verify"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("P_3 = x^3+x+1\nP_15 = x^15+x+1\nt = "));
    let o = run(&["embed", "-p", "3", "-l", "2", "-m", "8", "--verify", "--format", "machine"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "1 0 1");
    assert_eq!(lines[2].split(' ').count(), 8);
    assert_eq!(code(&run(&["embed", "-p", "2", "-l", "3", "-m", "10"])), 2);
    assert_eq!(code(&run(&["embed", "-p", "2", "-l", "3", "-m", "5"])), 2);
}

#[test]
fn verify() {
    let o = run(&["verify", "-p", "2", "--max", "20"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("3 triangles, 0 failed\n"));
    let o = run(&["verify", "-p", "3", "--max", "1"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "0 triangles, 0 failed\n"));
    let o = run(&["verify", "-p", "5", "--max", "30"]);
    assert_eq!(code(&o), 0);
    let o = run(&["verify", "-p", "3", "--max", "8", "--format", "machine"]);
    assert_eq!(stdout(&o), "1 2 4 1\n1 2 8 1\n1 4 8 1\n2 4 8 1\n");
}

#[test]
fn bench() {
    let o = run(&["bench", "-p", "3", "--max", "10"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("l,level,decorate_seconds,embed_seconds"));
    let degrees: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(degrees, ["1", "2", "4", "5", "7", "8", "10"]);
    let o = run(&["bench", "-p", "3", "--max", "0"]);
    assert_eq!(stdout(&o), "l,level,decorate_seconds,embed_seconds\n");
}

#[test]
fn conway() {
    let o = run(&["conway", "-p", "2", "-a", "1"]);
    assert_eq!(stdout(&o), "x+1\n");
    let o = run(&["conway", "-p", "3", "-a", "4", "--format", "machine"]);
    assert_eq!(stdout(&o), "2 0 0 2 1\n");
    assert_eq!(code(&run(&["conway", "-p", "2", "-a", "64"])), 3);
    assert_eq!(code(&run(&["conway", "-p", "3", "-a", "17", "--pseudo", "--work-bound", "1"])), 3);
    assert_eq!(code(&run(&["conway", "-p", "3", "-a", "17", "--pseudo"])), 0);
}

#[test]
fn custom_conway_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.txt");
    // Only degree 1 is listed; degree 2 and 4 are searched.
    std::fs::write(&path, "# partial\n2 1 1 1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["stdpoly", "-p", "2", "-l", "15", "--conway-table", p]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "x^15+x+1\n"));
    assert_eq!(code(&run(&["stdpoly", "-p", "2", "-l", "15", "--conway-table", p, "--work-bound", "4"])), 3);
    std::fs::write(&path, "2 2 1 0 1\n").unwrap();
    assert_eq!(code(&run(&["stdpoly", "-p", "2", "-l", "3", "--conway-table", p])), 1);
    assert_eq!(code(&run(&["stdpoly", "-p", "2", "-l", "3", "--conway-table", "/nonexistent/table"])), 2);
}

#[test]
fn export_import() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lattice.txt");
    let p = path.to_str().unwrap();
    assert_eq!(code(&run(&["export", "-p", "3", "--max", "10", "-o", p])), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\np 3\n"));
    assert!(text.lines().any(|l| l.starts_with("embedding 2 10 ")));
    let o = run(&["import", "-p", "3", p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("loaded 7 fields"));
    // Machine output of export matches the file.
    let o = run(&["export", "-p", "3", "--max", "10"]);
    assert_eq!(stdout(&o), text);
    std::fs::write(&path, text.replace("p 3", "p 5")).unwrap();
    assert_eq!(code(&run(&["import", "-p", "3", p])), 2);
}
