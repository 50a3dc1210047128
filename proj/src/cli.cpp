#include "cleanpair/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cleanpair/certificate.hpp"
#include "cleanpair/ffheights.hpp"
#include "cleanpair/search.hpp"

namespace cleanpair {

namespace {

using J = nlohmann::ordered_json;

struct RationalArg : CLI::Validator {
  RationalArg() : CLI::Validator("RATIONAL") {
    func_ = [](std::string& s) -> std::string {
      try {
        (void)Rational::parse(s);
        return {};
      } catch (const std::exception&) {
        return "'" + s + "' is not a rational number";
      }
    };
  }
};

J point_json(const PointQ& p) {
  if (p.is_identity()) return "O";
  return J{{"x", rational_to_json(p.x())}, {"y", rational_to_json(p.y())}};
}

J member_json(const FamilyMember& m) {
  J j;
  j["s"] = rational_to_json(m.s);
  j["t"] = rational_to_json(m.t);
  j["curve"] = J{{"a", rational_to_json(m.curve.a())}, {"b", rational_to_json(m.curve.b())}};
  j["point"] = point_json(m.point);
  j["in_u"] = m.in_u;
  j["failure"] = m.failure ? J(failure_name(*m.failure)) : J(nullptr);
  j["torsion_order"] = m.failure == MembershipFailure::TorsionMarkedPoint ? J(m.torsion_order) : J(nullptr);
  j["identity_checked"] = m.in_u ? J(verify_member_identity(m)) : J(nullptr);
  return j;
}

J summary_json(const PairingSummary& s) {
  J b = J::object();
  for (const char* k : {"0", "1", "2", "3", ">=4", "?"}) b[k] = s.buckets.at(k);
  return J{{"candidates", s.candidates},
           {"ranks", b},
           {"rank1_pairs",
            J{{"unordered", s.unordered_pairs.get_str()},
              {"ordered", s.ordered_pairs.get_str()},
              {"ordered_with_self", s.ordered_with_self.get_str()}}}};
}

std::vector<std::string> labels(const std::vector<std::string>& v) { return v; }

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clean pairs of elliptic curves: certificates, heights and searches", "cleanpair"};
  app.require_subcommand(1);
  const RationalArg rational;

  std::string s_arg, t_arg, t1_arg, t2_arg, out_path, cert_path, format = "json", oracle_path, csv_path, db_path;
  long H = 0;
  bool assert_rank1 = false, all_records = false, positive_only = false, nonreduced = false, sweep = false;

  auto* member = app.add_subcommand("member", "membership report for (s, t)");
  member->add_option("s", s_arg)->required()->check(rational);
  member->add_option("t", t_arg)->required()->check(rational);

  auto* certify = app.add_subcommand("certify", "build a clean-pair certificate for (s, t1), (s, t2)");
  certify->add_option("s", s_arg)->required()->check(rational);
  certify->add_option("t1", t1_arg)->required()->check(rational);
  certify->add_option("t2", t2_arg)->required()->check(rational);
  certify->add_option("--out", out_path, "write the certificate here instead of stdout");
  certify->add_flag("--assert-rank1", assert_rank1, "record rank E1(Q) = rank E2(Q) = 1 as a supplied hypothesis");

  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("cert", cert_path)->required()->check(CLI::ExistingFile);

  auto* heights = app.add_subcommand("heights", "bad places and local heights over Q(T)");
  heights->add_option("s", s_arg)->required()->check(rational);
  heights->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

  auto* rankff = app.add_subcommand("rank-ff", "generic rank over Q(T) with evidence");
  rankff->add_option("s", s_arg)->required()->check(rational);

  auto* search = app.add_subcommand("search", "enumerate the s = 1 slice with h(t) <= H^6");
  search->add_option("H", H)->required()->check(CLI::PositiveNumber);
  search->add_option("--oracle", oracle_path, "rank oracle: 'p q rank' lines")->check(CLI::ExistingFile);
  search->add_option("--csv", csv_path, "write records as CSV");
  search->add_flag("--all-records", all_records, "CSV includes non-candidates");
  search->add_flag("--positive-only", positive_only, "only t > 0");
  search->add_flag("--include-nonreduced", nonreduced, "also p/q with gcd(p, q) > 1");
  search->add_flag("--sweep", sweep, "report candidate counts under every enumeration convention");

  auto* dbfilter = app.add_subcommand("dbfilter", "family candidates in a curve table");
  dbfilter->add_option("file", db_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*member) {
      out << member_json(make_member(Rational::parse(s_arg), Rational::parse(t_arg))).dump(2) << "\n";
      return 0;
    }
    if (*certify) {
      const Rational s = Rational::parse(s_arg);
      const PairHypothesis pair = pair_hypothesis(make_member(s, Rational::parse(t1_arg)),
                                                  make_member(s, Rational::parse(t2_arg)), {assert_rank1, assert_rank1});
      const CleanPairCertificate cert = assemble_certificate(pair);
      const Verification v = verify_certificate(cert);
      if (!v.ok) {
        for (const auto& r : v.reasons) err << r.code << ": " << r.detail << "\n";
        return 1;
      }
      const std::string text = certificate_to_string(cert);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
        f << text;
        out << "wrote " << out_path << "\n";
      }
      return 0;
    }
    if (*verify) {
      std::ifstream f(cert_path, std::ios::binary);
      std::stringstream buf;
      buf << f.rdbuf();
      CleanPairCertificate cert;
      try {
        cert = certificate_from_string(buf.str());
      } catch (const CertificateFormatError& e) {
        out << "REJECTED\n";
        err << e.what() << "\n";
        return 1;
      }
      const Verification v = verify_certificate(cert);
      out << (v.ok ? "OK" : "REJECTED") << "\n";
      for (const auto& r : v.reasons) out << r.code << ": " << r.detail << "\n";
      return v.ok ? 0 : 1;
    }
    if (*heights) {
      const Rational s = Rational::parse(s_arg);
      if (format == "markdown") {
        out << heights_markdown(s);
      } else {
        out << heights_json(s).dump(2) << "\n";
      }
      return 0;
    }
    if (*rankff) {
      out << rank_json(Rational::parse(s_arg)).dump(2) << "\n";
      return 0;
    }
    if (*search) {
      const EnumerationConvention conv{positive_only, nonreduced};
      std::vector<SearchRecord> recs = enumerate_s1(H, conv);
      if (!oracle_path.empty()) attach_ranks(recs, load_oracle(oracle_path));
      J j;
      j["H"] = H;
      j["convention"] = conv.name();
      j["records"] = recs.size();
      const J summary = summary_json(pairing_summary(recs));
      for (auto it = summary.begin(); it != summary.end(); ++it) j[it.key()] = it.value();
      if (sweep) {
        J rows = J::array();
        for (const auto& r : convention_sweep(H)) {
          rows.push_back(J{{"convention", r.convention.name()}, {"records", r.records}, {"candidates", r.candidates}});
        }
        j["sweep"] = rows;
      }
      if (!csv_path.empty()) {
        std::vector<SearchRecord> rows;
        for (const auto& r : recs) {
          if (all_records || r.candidate()) rows.push_back(r);
        }
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + csv_path + "'");
        write_csv(f, rows);
        j["csv_rows"] = rows.size();
      }
      out << j.dump(2) << "\n";
      return 0;
    }
    if (*dbfilter) {
      const DbFilterReport rep = filter_db_family_candidates(load_db(db_path));
      J shape = J::array();
      for (const auto& c : rep.shape) {
        shape.push_back(J{{"label", c.label},
                          {"A", c.A.get_str()},
                          {"B", c.B.get_str()},
                          {"t", rational_to_json(c.t)},
                          {"r", c.r ? J(rational_to_json(*c.r)) : J(nullptr)},
                          {"torsion_at_t", c.torsion_at_t}});
      }
      J j;
      j["rank_one"] = rep.rank_one;
      j["shape_count"] = rep.shape.size();
      j["eligible_count"] = rep.eligible.size();
      j["excluded_torsion"] = labels(rep.excluded_torsion);
      j["square_count"] = rep.square.size();
      j["square"] = labels(rep.square);
      j["square_pairs"] = J{{"unordered", rep.square_pairs_unordered.get_str()},
                            {"ordered", rep.square_pairs_ordered.get_str()},
                            {"ordered_with_self", rep.square_pairs_with_self.get_str()}};
      j["shape"] = shape;
      out << j.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cleanpair
