#include "diop/corpus.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "diop/psi.hpp"
#include "diop/theta.hpp"

namespace diop {

namespace {

const char* kFrob = R"(dioperad
name frob
order pathlex D_dd_d D_sd_s m_sd_d D_ds_s m_ds_d m_ss_s
dgen m : (2,1) sym (21;-;1)
dgen D : (1,2) sym (-;21;1)
drel assoc : dtree{a=m; b=m; edge a.out1 -> b.in1; in a.in1=1; in a.in2=2; in b.in2=3; out b.out1=1}
   - dtree{a=m; b=m; edge a.out1 -> b.in2; in b.in1=1; in a.in1=2; in a.in2=3; out b.out1=1} = 0
drel coassoc : dtree{a=D; b=D; edge a.out1 -> b.in1; in a.in1=1; out b.out1=1; out b.out2=2; out a.out2=3}
   - dtree{a=D; b=D; edge a.out2 -> b.in1; in a.in1=1; out a.out1=1; out b.out1=2; out b.out2=3} = 0
drel frobenius : dtree{a=m; b=D; edge a.out1 -> b.in1; in a.in1=1; in a.in2=2; out b.out1=1; out b.out2=2}
   - dtree{a=m; b=D; edge b.out1 -> a.in2; in a.in1=1; in b.in1=2; out a.out1=1; out b.out2=2} = 0
)";

const char* kLieb = R"(dioperad
name lieb
order revpathlex c_dd_d c_sd_s b_sd_d c_ds_s b_ds_d b_ss_s
dgen b : (2,1) sym (21;-;-1)
dgen c : (1,2) sym (-;21;-1)
drel jacobi : dtree{a=b; x=b; edge a.out1 -> x.in1; in a.in1=1; in a.in2=2; in x.in2=3; out x.out1=1}
   + dtree{a=b; x=b; edge a.out1 -> x.in1; in a.in1=2; in a.in2=3; in x.in2=1; out x.out1=1}
   + dtree{a=b; x=b; edge a.out1 -> x.in1; in a.in1=3; in a.in2=1; in x.in2=2; out x.out1=1} = 0
drel cojacobi : dtree{a=c; x=c; edge a.out1 -> x.in1; in a.in1=1; out x.out1=1; out x.out2=2; out a.out2=3}
   + dtree{a=c; x=c; edge a.out1 -> x.in1; in a.in1=1; out x.out1=2; out x.out2=3; out a.out2=1}
   + dtree{a=c; x=c; edge a.out1 -> x.in1; in a.in1=1; out x.out1=3; out x.out2=1; out a.out2=2} = 0
drel drinfeld : dtree{a=b; x=c; edge a.out1 -> x.in1; in a.in1=1; in a.in2=2; out x.out1=1; out x.out2=2}
   - dtree{a=b; x=c; edge x.out1 -> a.in2; in a.in1=1; in x.in1=2; out a.out1=1; out x.out2=2}
   - dtree{a=b; x=c; edge x.out2 -> a.in2; in a.in1=1; in x.in1=2; out x.out1=1; out a.out1=2}
   + dtree{a=b; x=c; edge x.out1 -> a.in2; in a.in1=2; in x.in1=1; out a.out1=1; out x.out2=2}
   + dtree{a=b; x=c; edge x.out2 -> a.in2; in a.in1=2; in x.in1=1; out x.out1=1; out a.out1=2} = 0
)";

const char* kLiebTri = R"(dioperad
name lieb_tri
order revpathlex b_ss_s b_ds_d b_sd_d r_d_s
dgen b : (2,1) sym (21;-;-1)
dgen r : (0,2) sym (-;21;-1)
drel jacobi : dtree{a=b; x=b; edge a.out1 -> x.in1; in a.in1=1; in a.in2=2; in x.in2=3; out x.out1=1}
   + dtree{a=b; x=b; edge a.out1 -> x.in1; in a.in1=2; in a.in2=3; in x.in2=1; out x.out1=1}
   + dtree{a=b; x=b; edge a.out1 -> x.in1; in a.in1=3; in a.in2=1; in x.in2=2; out x.out1=1} = 0
drel yang_baxter : dtree{p=r; q=r; x=b; edge p.out1 -> x.in1; edge q.out1 -> x.in2; out x.out1=1; out p.out2=2; out q.out2=3}
   + dtree{p=r; q=r; x=b; edge p.out2 -> x.in1; edge q.out1 -> x.in2; out p.out1=1; out x.out1=2; out q.out2=3}
   + dtree{p=r; q=r; x=b; edge p.out2 -> x.in1; edge q.out2 -> x.in2; out p.out1=1; out q.out1=2; out x.out1=3} = 0
)";

std::string v_text(const std::string& name, int degree, bool sign) {
  const char* s = sign ? "-" : "";
  std::ostringstream os;
  os << "operad planar\n"
     << "name " << name << "\n"
     << "order quantumpath\n"
     << "gen mu : (s,s) -> s\n"
     << "gen mul : (d,s) -> d\n"
     << "gen mur : (s,d) -> d\n"
     << "gen c : (d) -> s deg " << degree << "\n"
     << "rule assoc : mu(mu(1,2),3) -> mu(1,mu(2,3))\n"
     << "rule left : mul(mul(1,2),3) -> mul(1,mu(2,3))\n"
     << "rule middle : mul(mur(1,2),3) -> mur(1,mul(2,3))\n"
     << "rule right : mur(mu(1,2),3) -> mur(1,mur(2,3))\n"
     << "rule copair_left : c(mul(1,2)) -> " << s << "mu(c(1),2)\n"
     << "rule copair_right : c(mur(1,2)) -> " << s << "mu(1,c(2))\n";
  return os.str();
}

std::string qpois_text() {
  std::ostringstream os;
  os << "dioperad\nname qpois_dual_twisted\norder pathlex\ndgen mu : (2,2) sym (21;-;1) (-;21;-1)\n";
  auto tree = [](int c, int p) {
    std::vector<int> ins, outs;
    for (int i = 1; i <= 3; ++i) {
      if (i != c) ins.push_back(i);
      if (i != p) outs.push_back(i);
    }
    std::ostringstream t;
    t << "dtree{u=mu; v=mu; edge u.out2 -> v.in2; in u.in1=" << ins[0] << "; in u.in2=" << ins[1]
      << "; in v.in1=" << c << "; out u.out1=" << p << "; out v.out1=" << outs[0] << "; out v.out2=" << outs[1]
      << "}";
    return t.str();
  };
  const int eps[] = {1, -1, 1};
  for (int c = 1; c <= 3; ++c)
    for (int p = 1; p <= 3; ++p) {
      if (c == 3 && p == 3) continue;
      os << "drel t" << c << p << " : " << tree(c, p) << "\n   " << (eps[p - 1] > 0 ? "-" : "+") << " "
         << tree(3, 3) << " = 0\n";
    }
  return os.str();
}

const char* kComShuffle = R"(operad shuffle
name com_shuffle
order pathlex
gen x : (s,s) -> s
rule assoc : x(x(1,2),3) -> x(1,x(2,3))
rule assoc_twisted : x(x(1,3),2) -> x(1,x(2,3))
)";

const char* kLieShuffle = R"(operad shuffle
name lie_shuffle
order revpathlex
gen b : (s,s) -> s
rule jacobi : b(1,b(2,3)) -> b(b(1,2),3) - b(b(1,3),2)
)";

const char* kAssocPlanar = R"(operad planar
name assoc_planar
order pathlex
gen m : (s,s) -> s
rule assoc : m(m(1,2),3) -> m(1,m(2,3))
)";

const char* kCom2Cyclic = R"(operad shuffle
name com2_cyclic
order pathlex
gen t : (s,s,s) -> s
rule r123 : t(t(1,2,3),4,5) -> t(1,2,t(3,4,5))
rule r124 : t(t(1,2,4),3,5) -> t(1,2,t(3,4,5))
rule r125 : t(t(1,2,5),3,4) -> t(1,2,t(3,4,5))
rule r134 : t(t(1,3,4),2,5) -> t(1,2,t(3,4,5))
rule r135 : t(t(1,3,5),2,4) -> t(1,2,t(3,4,5))
rule r145 : t(t(1,4,5),2,3) -> t(1,2,t(3,4,5))
rule r234 : t(1,t(2,3,4),5) -> t(1,2,t(3,4,5))
rule r235 : t(1,t(2,3,5),4) -> t(1,2,t(3,4,5))
rule r245 : t(1,t(2,4,5),3) -> t(1,2,t(3,4,5))
)";

Presentation named(Presentation p, std::string name) {
  p.name = std::move(name);
  return p;
}

Presentation build(std::string_view name) {
  if (name == "theta_lie") return named(theta_rules(corpus("lie_shuffle"), ColoringRule::parse("pos_pos")), "theta_lie");
  if (name == "theta_assoc")
    return named(theta_rules(corpus("assoc_planar"), ColoringRule::parse("pos_pos")), "theta_assoc");
  if (name == "plieb_dual")
    return named(theta_presentation(corpus("com_shuffle"), ColoringRule::parse("nonneg_nonneg"), OrderKind::pathlex),
                 "plieb_dual");
  if (name == "qpois_dual")
    return named(theta_presentation(corpus("com2_cyclic"), ColoringRule::parse("equal"), OrderKind::pathlex),
                 "qpois_dual");
  if (name == "qlieb_dual")
    return named(theta_presentation(corpus("com_shuffle"), ColoringRule::parse("nonneg_pos"), OrderKind::pathlex),
                 "qlieb_dual");
  return load_presentation(corpus_text(name));
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"frob",       "lieb",       "lieb_tri",    "v_d",         "w_d",         "w_dual",       "qpois_dual", "theta_lie",
          "theta_assoc", "plieb_dual", "qlieb_dual", "com_shuffle", "lie_shuffle", "assoc_planar", "com2_cyclic",
          "qpois_dual_twisted"};
}

std::string corpus_text(std::string_view name) {
  if (name == "frob") return kFrob;
  if (name == "lieb") return kLieb;
  if (name == "lieb_tri") return kLiebTri;
  if (name == "v_d") return v_text("v_d", 1, false);
  if (name == "w_d") return v_text("w_d", 1, true);
  if (name == "w_dual") return v_text("w_dual", 0, true);
  if (name == "qpois_dual_twisted") return qpois_text();
  if (name == "com_shuffle") return kComShuffle;
  if (name == "lie_shuffle") return kLieShuffle;
  if (name == "assoc_planar") return kAssocPlanar;
  if (name == "com2_cyclic") return kCom2Cyclic;
  if (name == "theta_lie" || name == "theta_assoc" || name == "plieb_dual" || name == "qlieb_dual" ||
      name == "qpois_dual")
    return serialize_presentation(build(name));
  throw InputError("unknown corpus entry '" + std::string(name) + "'");
}

Presentation corpus(std::string_view name) {
  bool known = false;
  for (const auto& n : corpus_names()) known |= n == name;
  if (!known) throw InputError("unknown corpus entry '" + std::string(name) + "'");
  return build(name);
}

Presentation load_presentation(std::string_view text) {
  if (is_dioperad_text(text)) return shuffle_expand(parse_dioperad(text));
  return parse_presentation(text);
}

std::string read_source(std::string_view spec) {
  if (spec.starts_with("corpus:")) return corpus_text(spec.substr(7));
  std::ifstream in{std::string(spec)};
  if (!in) throw InputError("cannot read '" + std::string(spec) + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Presentation load_source(std::string_view spec) {
  if (spec.starts_with("corpus:")) return corpus(spec.substr(7));
  return load_presentation(read_source(spec));
}

}  // namespace diop
