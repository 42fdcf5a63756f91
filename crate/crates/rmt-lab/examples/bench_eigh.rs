use rmt_lab::eigen::eigh;
use rmt_lab::matrix::HermitianMatrix;
use rmt_lab::rng::RngStream;
use num_complex::Complex64;

fn main() {
    for n in [16usize, 64, 256] {
        let mut rng = RngStream::new(1, 0);
        let h = HermitianMatrix::from_rows_real(n, (0..n*n).map(|_| rng.normal()).collect()).unwrap();
        let hc = HermitianMatrix::from_rows_complex(n, (0..n*n).map(|_| Complex64::new(rng.normal(), rng.normal())).collect()).unwrap();
        for (label, m, vecs) in [("real-novec", &h, false), ("real-vec", &h, true), ("cplx-novec", &hc, false), ("cplx-vec", &hc, true)] {
            let reps = if n <= 64 { 200 } else { 10 };
            let t0 = std::time::Instant::now();
            for _ in 0..reps { let s = eigh(m, vecs).unwrap(); std::hint::black_box(s.eigenvalues()[0]); }
            let dt = t0.elapsed().as_secs_f64() / reps as f64;
            println!("n={n:4} {label:10} {:9.3} ms", dt*1e3);
        }
    }
}
