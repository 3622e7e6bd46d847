// Copyright 2026 The ldpfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpfair/datasets.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "boost/tokenizer.hpp"
#include "httplib.h"
#include "ldpfair/hashing.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {

FeatureLayout TabularDataset::Layout() const {
  FeatureLayout l;
  for (const ColumnSchema& c : schema) {
    if (c.kind == ColumnKind::kNumeric) {
      l.numeric.push_back(l.width++);
    } else {
      const int w = static_cast<int>(c.levels.size());
      l.groups.emplace_back(l.width, w);
      l.width += w;
    }
  }
  return l;
}

TabularDataset TabularDataset::Select(const std::vector<int>& rows) const {
  TabularDataset out;
  out.name = name;
  out.split = split;
  out.schema = schema;
  out.card_u = card_u;
  out.card_s = card_s;
  out.x.resize(rows.size(), x.cols());
  out.u.resize(rows.size());
  out.s.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(i) = x.row(rows[i]);
    out.u[i] = u[rows[i]];
    out.s[i] = s[rows[i]];
  }
  return out;
}

std::string ResolveCacheDir(const std::string& fallback) {
  const char* env = std::getenv(kCacheDirEnv);
  return (env != nullptr && *env != '\0') ? std::string(env) : fallback;
}

namespace {

std::vector<std::string> AdultRecords(const std::string& raw) {
  std::vector<std::string> out;
  for (absl::string_view line : absl::StrSplit(raw, '\n')) {
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '|') continue;
    out.emplace_back(line);
  }
  return out;
}

struct Url {
  std::string scheme_host_port;
  std::string path;
};

absl::StatusOr<Url> SplitUrl(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    return absl::InvalidArgumentError("fetch: URL needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Url u;
  u.scheme_host_port = url.substr(0, path_start);
  u.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!u.path.empty() && u.path.back() == '/') u.path.pop_back();
  return u;
}

absl::StatusOr<std::string> HttpGet(const Url& base, const std::string& file,
                                    const std::string& cache_hint) {
  httplib::Client cli(base.scheme_host_port);
  cli.set_follow_location(true);
  cli.set_connection_timeout(15);
  cli.set_read_timeout(60);
  const std::string path = base.path + "/" + file;
  auto res = cli.Get(path);
  if (!res) {
    return absl::UnavailableError(absl::StrFormat(
        "fetch: GET %s%s failed (%s); for offline use place the raw files at "
        "%s",
        base.scheme_host_port, path, httplib::to_string(res.error()),
        cache_hint));
  }
  if (res->status != 200) {
    return absl::UnavailableError(
        absl::StrFormat("fetch: GET %s%s returned HTTP %d; cache hint: %s",
                        base.scheme_host_port, path, res->status, cache_hint));
  }
  return res->body;
}

absl::Status CheckCount(const std::string& raw, int expected,
                        const std::string& what) {
  const int n = CountAdultRecords(raw);
  if (n != expected) {
    return absl::DataLossError(absl::StrFormat(
        "adult: %s has %d records, expected %d", what, n, expected));
  }
  return absl::OkStatus();
}

}  // namespace

int CountAdultRecords(const std::string& raw) {
  return static_cast<int>(AdultRecords(raw).size());
}

absl::StatusOr<AdultRaw> FetchUciAdult(const std::string& cache_dir,
                                       const std::string& url_override) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(cache_dir) / "adult";
  const fs::path train_path = dir / "train.raw", test_path = dir / "test.raw";
  AdultRaw raw;
  if (fs::exists(train_path) && fs::exists(test_path)) {
    ASSIGN_OR_RETURN(raw.train, ReadFile(train_path.string()));
    ASSIGN_OR_RETURN(raw.test, ReadFile(test_path.string()));
    RETURN_IF_ERROR(CheckCount(raw.train, kAdultTrainRecords, "cached train"));
    RETURN_IF_ERROR(CheckCount(raw.test, kAdultTestRecords, "cached test"));
    raw.from_cache = true;
    return raw;
  }
  ASSIGN_OR_RETURN(
      Url base,
      SplitUrl(url_override.empty() ? std::string(kAdultDefaultUrl)
                                    : url_override));
  const std::string hint = dir.string() + "/{train,test}.raw";
  ASSIGN_OR_RETURN(raw.train, HttpGet(base, "adult.data", hint));
  ASSIGN_OR_RETURN(raw.test, HttpGet(base, "adult.test", hint));
  RETURN_IF_ERROR(CheckCount(raw.train, kAdultTrainRecords, "adult.data"));
  RETURN_IF_ERROR(CheckCount(raw.test, kAdultTestRecords, "adult.test"));
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError("fetch: cannot create " + dir.string() + ": " +
                               ec.message());
  }
  RETURN_IF_ERROR(WriteFile(train_path.string(), raw.train));
  RETURN_IF_ERROR(WriteFile(test_path.string(), raw.test));
  return raw;
}

namespace {

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Encodes raw string columns: numeric columns parsed and z-scored with the
// statistics of `train`, categorical columns one-hot over the sorted union of
// levels.
absl::StatusOr<std::pair<TabularDataset, TabularDataset>> EncodeColumns(
    const std::vector<std::string>& names, const std::vector<bool>& numeric,
    const std::vector<std::vector<std::string>>& train,
    const std::vector<std::vector<std::string>>& test) {
  const std::size_t nc = names.size();
  std::vector<ColumnSchema> schema(nc);
  int width = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    schema[c].name = names[c];
    if (numeric[c]) {
      schema[c].kind = ColumnKind::kNumeric;
      double sum = 0.0;
      for (const auto& r : train) {
        double v;
        if (!absl::SimpleAtod(r[c], &v)) {
          return absl::InvalidArgumentError(absl::StrFormat(
              "column %s: non-numeric value '%s'", names[c], r[c]));
        }
        sum += v;
      }
      const double mean = sum / train.size();
      double ss = 0.0;
      for (const auto& r : train) {
        double v = 0.0;
        (void)absl::SimpleAtod(r[c], &v);
        ss += (v - mean) * (v - mean);
      }
      schema[c].mean = mean;
      schema[c].stddev = std::sqrt(ss / train.size());
      if (!(schema[c].stddev > 0.0)) {
        return absl::InvalidArgumentError("column " + names[c] +
                                          " is constant on the train split");
      }
      width += 1;
    } else {
      schema[c].kind = ColumnKind::kCategorical;
      std::set<std::string> levels;
      for (const auto& r : train) levels.insert(r[c]);
      for (const auto& r : test) levels.insert(r[c]);
      schema[c].levels.assign(levels.begin(), levels.end());
      width += static_cast<int>(levels.size());
    }
  }
  auto encode = [&](const std::vector<std::vector<std::string>>& rows,
                    Matrix& x) -> absl::Status {
    x = Matrix::Zero(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      int col = 0;
      for (std::size_t c = 0; c < nc; ++c) {
        const ColumnSchema& sc = schema[c];
        if (sc.kind == ColumnKind::kNumeric) {
          double v;
          if (!absl::SimpleAtod(rows[i][c], &v)) {
            return absl::InvalidArgumentError(absl::StrFormat(
                "column %s: non-numeric value '%s'", sc.name, rows[i][c]));
          }
          x(i, col++) = (v - sc.mean) / sc.stddev;
        } else {
          const auto it = std::lower_bound(sc.levels.begin(), sc.levels.end(),
                                           rows[i][c]);
          x(i, col + (it - sc.levels.begin())) = 1.0;
          col += static_cast<int>(sc.levels.size());
        }
      }
    }
    return absl::OkStatus();
  };
  std::pair<TabularDataset, TabularDataset> out;
  out.first.schema = out.second.schema = schema;
  out.first.split = "train";
  out.second.split = "test";
  RETURN_IF_ERROR(encode(train, out.first.x));
  RETURN_IF_ERROR(encode(test, out.second.x));
  return out;
}

constexpr int kAdultFields = 15;
constexpr int kAdultSex = 9;
constexpr int kAdultIncome = 14;
const char* const kAdultNames[kAdultFields] = {
    "age",          "workclass",    "fnlwgt",         "education",
    "education-num", "marital-status", "occupation",  "relationship",
    "race",         "sex",          "capital-gain",   "capital-loss",
    "hours-per-week", "native-country", "income"};
const bool kAdultNumeric[kAdultFields] = {true,  false, true,  false, true,
                                          false, false, false, false, false,
                                          true,  true,  true,  false, false};

absl::Status ParseAdult(const std::string& raw, const std::string& what,
                        std::vector<std::vector<std::string>>& attrs,
                        std::vector<int>& u, std::vector<int>& s) {
  int line_no = 0;
  for (const std::string& rec : AdultRecords(raw)) {
    ++line_no;
    std::vector<std::string> f;
    for (absl::string_view p : absl::StrSplit(rec, ',')) {
      f.emplace_back(absl::StripAsciiWhitespace(p));
    }
    if (static_cast<int>(f.size()) != kAdultFields) {
      return absl::InvalidArgumentError(
          absl::StrFormat("adult %s record %d: %d fields, expected %d", what,
                          line_no, f.size(), kAdultFields));
    }
    std::string income = f[kAdultIncome];
    if (!income.empty() && income.back() == '.') income.pop_back();
    if (income != ">50K" && income != "<=50K") {
      return absl::InvalidArgumentError(absl::StrFormat(
          "adult %s record %d: unknown income '%s'", what, line_no, income));
    }
    const std::string& sex = f[kAdultSex];
    if (sex != "Male" && sex != "Female") {
      return absl::InvalidArgumentError(absl::StrFormat(
          "adult %s record %d: unknown sex '%s'", what, line_no, sex));
    }
    u.push_back(income == ">50K" ? 1 : 0);
    s.push_back(sex == "Male" ? 1 : 0);
    std::vector<std::string> a;
    for (int i = 0; i < kAdultFields; ++i) {
      if (i != kAdultSex && i != kAdultIncome) a.push_back(f[i]);
    }
    attrs.push_back(std::move(a));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<DatasetSplits> PreprocessAdult(const AdultRaw& raw) {
  std::vector<std::vector<std::string>> tr, te;
  std::vector<int> tru, trs, teu, tes;
  RETURN_IF_ERROR(ParseAdult(raw.train, "train", tr, tru, trs));
  RETURN_IF_ERROR(ParseAdult(raw.test, "test", te, teu, tes));
  std::vector<std::string> names;
  std::vector<bool> numeric;
  for (int i = 0; i < kAdultFields; ++i) {
    if (i == kAdultSex || i == kAdultIncome) continue;
    names.push_back(kAdultNames[i]);
    numeric.push_back(kAdultNumeric[i]);
  }
  ASSIGN_OR_RETURN(auto enc, EncodeColumns(names, numeric, tr, te));
  DatasetSplits out;
  out.train = std::move(enc.first);
  out.test = std::move(enc.second);
  out.train.name = out.test.name = "adult";
  out.train.u = std::move(tru);
  out.train.s = std::move(trs);
  out.test.u = std::move(teu);
  out.test.s = std::move(tes);
  return out;
}

namespace {

absl::StatusOr<RawTable> ReadCsv(const std::string& text) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  RawTable t;
  bool first = true;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    std::string l(line);
    if (!l.empty() && l.back() == '\r') l.pop_back();
    if (l.empty()) continue;
    std::vector<std::string> fields;
    try {
      Tokenizer tok(l);
      fields.assign(tok.begin(), tok.end());
    } catch (const boost::escaped_list_error& e) {
      return absl::InvalidArgumentError(std::string("csv: ") + e.what());
    }
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      t.rows.push_back(std::move(fields));
    }
  }
  if (first) return absl::InvalidArgumentError("csv: empty file");
  return t;
}

}  // namespace

absl::StatusOr<DatasetSplits> LoadCompas(const std::string& csv_path,
                                         std::uint64_t seed) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(csv_path));
  ASSIGN_OR_RETURN(RawTable t, ReadCsv(text));
  std::map<std::string, int> col;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    col.emplace(t.header[i], static_cast<int>(i));  // first occurrence wins
  }
  const std::vector<std::string> attrs = {
      "sex",         "age",           "age_cat",         "juv_fel_count",
      "juv_misd_count", "juv_other_count", "priors_count", "c_charge_degree",
      "decile_score", "score_text"};
  const std::vector<bool> numeric = {false, true,  false, true,  true,
                                     true,  true,  false, true,  false};
  std::vector<std::string> needed = attrs;
  for (const char* extra : {"race", "two_year_recid",
                            "days_b_screening_arrest", "is_recid"}) {
    needed.emplace_back(extra);
  }
  for (const std::string& n : needed) {
    if (!col.contains(n)) {
      return absl::InvalidArgumentError("compas: missing column '" + n + "'");
    }
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<int> u, s;
  for (const auto& r : t.rows) {
    if (r.size() < t.header.size()) continue;
    auto get = [&](const std::string& n) -> const std::string& {
      return r[col.at(n)];
    };
    double days;
    if (!absl::SimpleAtod(get("days_b_screening_arrest"), &days)) continue;
    if (days > 30 || days < -30) continue;
    if (get("is_recid") == "-1" || get("c_charge_degree") == "O" ||
        get("score_text") == "N/A") {
      continue;
    }
    int recid;
    if (!absl::SimpleAtoi(get("two_year_recid"), &recid) ||
        (recid != 0 && recid != 1)) {
      return absl::InvalidArgumentError("compas: bad two_year_recid value");
    }
    std::vector<std::string> a;
    for (const std::string& n : attrs) a.push_back(get(n));
    rows.push_back(std::move(a));
    u.push_back(1 - recid);
    s.push_back(get("race") == "African-American" ? 1 : 0);
  }
  if (rows.size() < 10) {
    return absl::InvalidArgumentError("compas: too few rows after filtering");
  }
  std::vector<int> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t n_train = rows.size() * 7 / 10;
  std::vector<std::vector<std::string>> tr, te;
  DatasetSplits out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& dst = i < n_train ? tr : te;
    auto& ds = i < n_train ? out.train : out.test;
    dst.push_back(rows[order[i]]);
    ds.u.push_back(u[order[i]]);
    ds.s.push_back(s[order[i]]);
  }
  std::vector<int> tru = std::move(out.train.u), trs = std::move(out.train.s);
  std::vector<int> teu = std::move(out.test.u), tes = std::move(out.test.s);
  ASSIGN_OR_RETURN(auto enc, EncodeColumns(attrs, numeric, tr, te));
  out.train = std::move(enc.first);
  out.test = std::move(enc.second);
  out.train.name = out.test.name = "compas";
  out.train.u = std::move(tru);
  out.train.s = std::move(trs);
  out.test.u = std::move(teu);
  out.test.s = std::move(tes);

  if (static_cast<int>(rows.size()) != kCompasRows) {
    out.warnings.push_back(absl::StrFormat(
        "compas: %d rows after filtering, expected %d (split %d/%d)",
        rows.size(), kCompasRows, kCompasTrainRows,
        kCompasRows - kCompasTrainRows));
  }
  double pos = 0.0;
  for (int v : u) pos += v;
  pos /= u.size();
  if (std::abs(pos - kCompasPositiveRate) > 0.01) {
    out.warnings.push_back(absl::StrFormat(
        "compas: P(U=1) = %.4f, expected %.4f +- 0.01", pos,
        kCompasPositiveRate));
  }
  return out;
}

absl::StatusOr<SyntheticData> GenerateSynthetic(const SyntheticSpec& spec) {
  const JointSourceUSX& src = spec.source;
  if (src.card_u() != 2 || src.card_s() != 2) {
    return absl::InvalidArgumentError("synthetic: U and S must be binary");
  }
  if (spec.means.rows() != src.card_x() || spec.means.cols() < 1) {
    return absl::InvalidArgumentError(
        "synthetic: need one mean row per x symbol");
  }
  if (!(spec.sigma >= 0.0) || spec.train_rows < 1 || spec.test_rows < 1) {
    return absl::InvalidArgumentError("synthetic: bad sigma or row counts");
  }
  for (int a = 0; a < src.card_x(); ++a)
    for (int b = a + 1; b < src.card_x(); ++b)
      if (spec.means.row(a) == spec.means.row(b)) {
        return absl::InvalidArgumentError("synthetic: emission means repeat");
      }
  const int dim = static_cast<int>(spec.means.cols());
  std::vector<ColumnSchema> schema(dim);
  for (int j = 0; j < dim; ++j) schema[j].name = absl::StrFormat("f%d", j);

  SyntheticData out{.splits = {}, .source = src, .train_x = {}, .test_x = {}};
  auto emit = [&](int n, std::uint64_t stream, TabularDataset& ds,
                  std::vector<int>& xs) -> absl::Status {
    ASSIGN_OR_RETURN(auto draws, src.Sample(n, spec.seed * 2 + stream));
    std::seed_seq seq{spec.seed, stream, std::uint64_t{7}};
    Rng rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    ds.name = "synthetic";
    ds.schema = schema;
    ds.x.resize(n, dim);
    for (int i = 0; i < n; ++i) {
      const UsxSample& d = draws[i];
      ds.u.push_back(d.u);
      ds.s.push_back(d.s);
      xs.push_back(d.x);
      for (int j = 0; j < dim; ++j) {
        ds.x(i, j) = spec.means(d.x, j) + spec.sigma * normal(rng);
      }
    }
    return absl::OkStatus();
  };
  RETURN_IF_ERROR(emit(spec.train_rows, 0, out.splits.train, out.train_x));
  RETURN_IF_ERROR(emit(spec.test_rows, 1, out.splits.test, out.test_x));
  out.splits.train.split = "train";
  out.splits.test.split = "test";
  return out;
}

SyntheticSpec DefaultSyntheticSpec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.source = RandomSource(2, 2, 4, seed);
  spec.means.resize(4, 2);
  spec.means << -1, -1, -1, 1, 1, -1, 1, 1;
  spec.sigma = 0.3;
  spec.seed = seed;
  return spec;
}

namespace {

constexpr char kMagic[8] = {'L', 'D', 'P', 'F', 'D', 'S', 'E', 'T'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::size_t kHashHexLen = 64;

class ByteWriter {
 public:
  template <typename T>
  void Pod(T v) {
    out_.append(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void Str(const std::string& s) {
    Pod<std::uint64_t>(s.size());
    out_.append(s);
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}
  template <typename T>
  absl::StatusOr<T> Pod() {
    if (pos_ + sizeof(T) > in_.size()) {
      return absl::DataLossError("dataset: truncated file");
    }
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  absl::StatusOr<std::string> Str() {
    ASSIGN_OR_RETURN(std::uint64_t n, Pod<std::uint64_t>());
    if (pos_ + n > in_.size()) {
      return absl::DataLossError("dataset: truncated string");
    }
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::string SerializeBody(const TabularDataset& ds) {
  ByteWriter w;
  w.bytes().append(kMagic, sizeof(kMagic));
  w.Pod(kFormatVersion);
  w.Str(ds.name);
  w.Str(ds.split);
  w.Pod<std::int32_t>(ds.card_u);
  w.Pod<std::int32_t>(ds.card_s);
  w.Pod<std::uint64_t>(ds.schema.size());
  for (const ColumnSchema& c : ds.schema) {
    w.Str(c.name);
    w.Pod<std::uint8_t>(c.kind == ColumnKind::kNumeric ? 0 : 1);
    w.Pod<std::uint64_t>(c.levels.size());
    for (const std::string& l : c.levels) w.Str(l);
    w.Pod(c.mean);
    w.Pod(c.stddev);
    w.Str(c.stats_split);
  }
  w.Pod<std::uint64_t>(ds.x.rows());
  w.Pod<std::uint64_t>(ds.x.cols());
  // Eigen storage is column-major.
  w.bytes().append(reinterpret_cast<const char*>(ds.x.data()),
                   sizeof(double) * ds.x.size());
  for (int v : ds.u) w.Pod<std::int32_t>(v);
  for (int v : ds.s) w.Pod<std::int32_t>(v);
  return std::move(w.bytes());
}

}  // namespace

std::string SerializeDataset(const TabularDataset& ds) {
  std::string body = SerializeBody(ds);
  const std::string hash = Sha256Hex(body);
  return body + hash;
}

std::string DatasetHash(const TabularDataset& ds) {
  return Sha256Hex(SerializeBody(ds));
}

absl::StatusOr<TabularDataset> DeserializeDataset(const std::string& bytes) {
  if (bytes.size() < sizeof(kMagic) + kHashHexLen ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    return absl::DataLossError("dataset: bad magic");
  }
  const std::string_view body(bytes.data(), bytes.size() - kHashHexLen);
  if (Sha256Hex(body) != bytes.substr(bytes.size() - kHashHexLen)) {
    return absl::DataLossError("dataset: content hash mismatch");
  }
  ByteReader r(body.substr(sizeof(kMagic)));
  ASSIGN_OR_RETURN(auto version, r.Pod<std::uint32_t>());
  if (version != kFormatVersion) {
    return absl::DataLossError(
        absl::StrFormat("dataset: unsupported version %d", version));
  }
  TabularDataset ds;
  ASSIGN_OR_RETURN(ds.name, r.Str());
  ASSIGN_OR_RETURN(ds.split, r.Str());
  ASSIGN_OR_RETURN(ds.card_u, r.Pod<std::int32_t>());
  ASSIGN_OR_RETURN(ds.card_s, r.Pod<std::int32_t>());
  ASSIGN_OR_RETURN(auto ncols, r.Pod<std::uint64_t>());
  for (std::uint64_t i = 0; i < ncols; ++i) {
    ColumnSchema c;
    ASSIGN_OR_RETURN(c.name, r.Str());
    ASSIGN_OR_RETURN(auto kind, r.Pod<std::uint8_t>());
    c.kind = kind == 0 ? ColumnKind::kNumeric : ColumnKind::kCategorical;
    ASSIGN_OR_RETURN(auto nlev, r.Pod<std::uint64_t>());
    for (std::uint64_t l = 0; l < nlev; ++l) {
      ASSIGN_OR_RETURN(std::string lev, r.Str());
      c.levels.push_back(std::move(lev));
    }
    ASSIGN_OR_RETURN(c.mean, r.Pod<double>());
    ASSIGN_OR_RETURN(c.stddev, r.Pod<double>());
    ASSIGN_OR_RETURN(c.stats_split, r.Str());
    ds.schema.push_back(std::move(c));
  }
  ASSIGN_OR_RETURN(auto rows, r.Pod<std::uint64_t>());
  ASSIGN_OR_RETURN(auto cols, r.Pod<std::uint64_t>());
  ds.x.resize(rows, cols);
  for (Eigen::Index i = 0; i < ds.x.size(); ++i) {
    ASSIGN_OR_RETURN(ds.x.data()[i], r.Pod<double>());
  }
  ds.u.resize(rows);
  ds.s.resize(rows);
  for (auto& v : ds.u) {
    ASSIGN_OR_RETURN(v, r.Pod<std::int32_t>());
  }
  for (auto& v : ds.s) {
    ASSIGN_OR_RETURN(v, r.Pod<std::int32_t>());
  }
  if (!r.done()) return absl::DataLossError("dataset: trailing bytes");
  if (ds.Layout().width != static_cast<int>(cols)) {
    return absl::DataLossError("dataset: schema does not match width");
  }
  return ds;
}

absl::Status SaveDataset(const TabularDataset& ds, const std::string& path) {
  return WriteFile(path, SerializeDataset(ds));
}

absl::StatusOr<TabularDataset> LoadDataset(const std::string& path) {
  ASSIGN_OR_RETURN(std::string bytes, ReadFile(path));
  return DeserializeDataset(bytes);
}

}  // namespace ldpfair
