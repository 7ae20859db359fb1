// benchmark helpers live in benches/
