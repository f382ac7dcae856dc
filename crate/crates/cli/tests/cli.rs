use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn domkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domkernel"))
        .args(args)
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_domkernel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_is_deterministic() {
    let a = domkernel(&["gen", "random:30:3:5"]);
    let b = domkernel(&["gen", "random:30:3:5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = domkernel(&["--seed", "6", "gen", "random:30:3:5"]);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&domkernel(&["gen", "grid:3:3"])).starts_with("p 9\n"));
}

#[test]
fn solve_reads_stdin() {
    let out = with_stdin(&["solve", "--r", "1"], "p 5\n0 1\n1 2\n2 3\n3 4\n");
    assert_eq!(stdout(&out), "size=2 valid=true optimal=true\n");
    let out = with_stdin(
        &["solve", "--r", "2", "--method", "bg"],
        "0 1\n1 2\n2 3\n3 4\n",
    );
    assert!(stdout(&out).contains("valid=true"));
}

#[test]
fn solve_with_dominatee_file() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.txt");
    fs::write(&z, "1 2 3\n").unwrap();
    let out = domkernel(&[
        "solve",
        "--gen",
        "star:10",
        "--r",
        "1",
        "--z",
        z.to_str().unwrap(),
        "--k",
        "0",
    ]);
    assert_eq!(
        stdout(&out),
        "size=1 valid=true optimal=true\nk=0 answer=no\n"
    );
}

#[test]
fn complexity_csv() {
    let out = domkernel(&[
        "complexity",
        "--gen",
        "subset:3",
        "--r",
        "1",
        "--set",
        "random:3:0",
        "--metric",
        "nu",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("graph,n,m,|A|,r,metric,value"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..6], &["subset:3", "11", "12", "3", "1", "nu"]);
}

#[test]
fn wcol_and_exact_cap() {
    let out = domkernel(&["wcol", "--gen", "complete:3", "--r", "1", "--exact"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("complete:3,1,3,3"));
    let out = domkernel(&["wcol", "--gen", "path:12", "--r", "1", "--exact"]);
    assert_eq!(out.status.code(), Some(3));
    let out = domkernel(&["wcol", "--gen", "path:12", "--r", "1"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("path:12,1,2,"));
}

#[test]
fn qw_and_closure_rows() {
    let out = domkernel(&[
        "qw", "--gen", "star:12", "--r", "2", "--m", "5", "--set", "all",
    ]);
    let row = stdout(&out).lines().nth(1).unwrap().to_owned();
    assert!(row.ends_with(",true"), "{row}");
    let out = domkernel(&[
        "closure",
        "--gen",
        "star:12",
        "--r",
        "1",
        "--t",
        "2",
        "--set",
        "random:2:1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn kernelize_writes_kernel_and_core() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("kernel.txt");
    let stats = dir.path().join("stats.csv");
    let out = domkernel(&[
        "--verify",
        "kernelize",
        "--gen",
        "star:15",
        "--r",
        "1",
        "--k",
        "1",
        "--target",
        "3",
        "--output",
        edges.to_str().unwrap(),
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let kernel = fs::read_to_string(&edges).unwrap();
    assert!(kernel.starts_with("p "));
    let z = fs::read_to_string(edges.with_extension("z")).unwrap();
    let core = z.lines().count();
    assert!(core <= 4, "core of size {core}");
    let stats = fs::read_to_string(stats).unwrap();
    assert!(stats.starts_with("stage,|Z|,|X|,|X_cl|,classes,|S|,|R|,removed"));
    assert_eq!(stats.lines().count(), 1 + 16 - core);

    let solved = domkernel(&[
        "solve",
        "--input",
        edges.to_str().unwrap(),
        "--r",
        "1",
        "--z",
        edges.with_extension("z").to_str().unwrap(),
    ]);
    assert!(stdout(&solved).starts_with("size=1 "));
}

#[test]
fn kernelize_rejects() {
    let out = domkernel(&["kernelize", "--gen", "path:20", "--r", "1", "--k", "2"]);
    assert_eq!(stdout(&out), "rejected k=2 witness={0,3,6,9,12,15,18}\n");
}

#[test]
fn bench_runs_plan() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.txt");
    fs::write(
        &plan,
        "family=spider:3:2\nr=1\nk=3\n\nfamily=path:20\nr=1\nk=2\n",
    )
    .unwrap();
    let out = domkernel(&["--workers", "2", "bench", plan.to_str().unwrap()]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,n,m,r,k,z_final,kernel_n,rejected,witness,wall_ms,seed"
    );
    assert!(lines[1].starts_with("spider:3:2,7,6,1,3,"));
    assert!(lines[2].starts_with("path:20,20,19,1,2,"));
    assert!(lines[2].contains(",,true,7,"));
}

#[test]
fn gadget_output() {
    let out = domkernel(&["gadget", "--gen", "path:3", "--r", "1", "--z", "all"]);
    assert_eq!(stdout(&out), "p 5\n0 1\n1 2\n3 4\n");
}

#[test]
fn exit_codes() {
    assert_eq!(domkernel(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(domkernel(&["solve"]).status.code(), Some(1));
    assert_eq!(domkernel(&["--help"]).status.code(), Some(0));
    let out = with_stdin(&["solve", "--r", "1"], "0 1\n1 x\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(domkernel(&["gen", "grid:3"]).status.code(), Some(2));
    assert_eq!(
        domkernel(&["solve", "--gen", "path:70", "--r", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        domkernel(&[
            "--exact-cap",
            "100",
            "solve",
            "--gen",
            "path:70",
            "--r",
            "1"
        ])
        .status
        .code(),
        Some(0)
    );
}
