#include <algorithm>
#include <filesystem>

#include "mqc/proofs.hpp"

namespace mqc {

const char* const kMpTerm = "fun e => fun a => # (e (a (fun b => shift k => b)))";
const char* const kDnsTerm = "fun a => fun b => # (b (gen x => shift k => a @ x k))";

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".mqc") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());

  std::vector<CorpusEntry> out;
  for (const auto& p : paths) {
    CorpusEntry e;
    e.file = p.filename().string();
    e.source = read_file(p.string());
    if (e.file.rfind("mqc_", 0) == 0) e.mode = CheckMode::Kind::MqcOnly;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace mqc
