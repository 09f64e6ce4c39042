// Byte-for-byte comparison of a fresh fixture build against the golden
// files shipped in data/golden. Guards every output format at once; when a
// format intentionally changes, regenerate the goldens with the CLI (see
// README) and review the diff.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geosci/pipeline.hpp"
#include "geosci/wos.hpp"
#include "support.hpp"

using namespace geosci;

TEST_CASE("ingest stats line matches the golden stdout") {
  testsupport::TempDir tmp("golden-stats");
  std::string cmd = testsupport::geosci_bin() + " ingest --format wos '" +
                    testsupport::wos_fixture().string() + "' --out '" +
                    (tmp / "corpus.jsonl").string() + "' > '" + (tmp / "stdout.txt").string() +
                    "' 2>/dev/null";
  REQUIRE(testsupport::run_cmd(cmd) == 0);
  CHECK(testsupport::slurp(tmp / "stdout.txt") ==
        testsupport::slurp(testsupport::data_dir() / "golden/ingest_stats.txt"));
}

TEST_CASE("fixture build reproduces every golden file") {
  testsupport::TempDir tmp("golden-build");
  std::istringstream in(testsupport::slurp(testsupport::wos_fixture()));
  auto records = parse_wos(in).records;
  save_corpus(records, tmp / "corpus.jsonl");

  PipelineConfig cfg;
  cfg.corpus = tmp / "corpus.jsonl";
  cfg.gazetteer = testsupport::gazetteer_file();
  cfg.cache = tmp / "geocache.tsv";
  cfg.out_dir = tmp / "out";
  cfg.cosine = true;
  cfg.exports = {"kml-earth", "kml-maps", "gps", "pajek"};
  run_build(cfg);

  for (const char* f : {"matrix.txt", "cosine.txt", "cities.kml", "cities2.kml", "inp_gps.txt",
                        "cities.paj", "run-manifest.txt"}) {
    CAPTURE(f);
    CHECK(testsupport::slurp(tmp / "out" / f) ==
          testsupport::slurp(testsupport::data_dir() / "golden/build" / f));
  }
}
