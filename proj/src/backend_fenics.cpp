#include "pso/backend_fenics.hpp"

#include <algorithm>
#include <map>

#include "pso/decimal.hpp"
#include "pso/errors.hpp"
#include "pso/meshgen.hpp"
#include "pso/taxonomy.hpp"

namespace pso::fenics {

namespace {

std::string suffixed(const std::string& base, std::size_t i) {
    return i == 0 ? base : base + std::to_string(i + 1);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::string scalar_const(const QuantityValue& v) {
    return "Constant(" + render_decimal(v.magnitude) + ")";
}

// Loads act along z; the DSL carries magnitudes only.
std::string vector_const(const QuantityValue& v) {
    return "Constant((0, 0, " + render_decimal(v.magnitude) + "))";
}

std::string note(const QuantityValue& v, const std::string& about) {
    std::string c = "  # ";
    if (!v.unit.empty()) c += v.unit + ", ";
    return c + about;
}

const QuantityValue& material(const plan::ProblemSpec& spec, const std::string& key) {
    auto it = spec.materials.find(key);
    if (it == spec.materials.end()) {
        throw IllPosed("spec for '" + spec.behavior + "' lacks material " + key);
    }
    return it->second;
}

class Script {
public:
    explicit Script(const plan::ProblemSpec& spec) : markers_(mesh::facet_markers(spec.mesh)) {}

    void line(const std::string& text) { lines_.push_back(text); }
    void blank() { lines_.push_back(""); }

    int marker(const std::string& surface) const {
        auto it = markers_.find(surface);
        if (it == markers_.end()) {
            throw IllPosed("surface '" + surface + "' carries no facet marker");
        }
        return it->second;
    }

    std::string str() const {
        std::string out;
        for (const std::string& l : lines_) {
            out += l;
            out += '\n';
        }
        return out;
    }

private:
    std::map<std::string, int> markers_;
    std::vector<std::string> lines_;
};

void emit_mesh_load(Script& s, const std::string& mesh_file, const std::string& facet_file,
                    bool with_measure) {
    s.line("mesh = Mesh(\"" + mesh_file + "\")");
    s.line("mvc = MeshValueCollection(\"size_t\", mesh, 2)");
    s.line("File(\"" + facet_file + "\") >> mvc");
    s.line("boundaries = MeshFunction(\"size_t\", mesh, mvc)");
    if (with_measure) {
        s.line("ds = Measure(\"ds\", domain=mesh, subdomain_data=boundaries)");
    }
}

void emit_time_setup(Script& s, const plan::ProblemSpec& spec) {
    if (!spec.temporal_extent) {
        throw IllPosed("transient spec for '" + spec.behavior + "' has no duration");
    }
    s.line("T = " + render_decimal(spec.temporal_extent->magnitude) +
           note(*spec.temporal_extent, spec.temporal_region));
    s.line("num_steps = " + std::to_string(spec.timestep_count));
    s.line("dt = T / num_steps");
}

ScriptArtifact finish(const plan::ProblemSpec& spec, const Script& body,
                      const std::string& mesh_file, const std::string& facet_file,
                      std::vector<std::string> items) {
    ScriptArtifact out;
    out.file_name = spec.behavior + "_fenics.py";
    out.mesh_file = mesh_file;
    out.facet_file = facet_file;
    Script head(spec);
    head.line("from fenics import *");
    head.blank();
    head.line("# " + spec.behavior + ": " + std::string(plan::physics_kind_name(spec.kind)) +
              " problem on '" + spec.domain + "'");
    head.line("# data items: " + join(items, ", "));
    head.blank();
    out.data_items = std::move(items);
    out.body = head.str() + body.str();
    return out;
}

ScriptArtifact emit_structural(const plan::ProblemSpec& spec, const std::string& mesh_file,
                               const std::string& facet_file) {
    Script s(spec);

    emit_mesh_load(s, mesh_file, facet_file, true);
    s.blank();
    s.line("V = VectorFunctionSpace(mesh, \"P\", 1)");
    s.blank();

    const QuantityValue& lam = material(spec, cls::ElasticModulus);
    const QuantityValue& mu = material(spec, cls::ShearModulus);
    s.line("lambda = " + scalar_const(lam) + note(lam, "elastic modulus"));
    s.line("mu = " + scalar_const(mu) + note(mu, "shear modulus"));
    auto density = spec.materials.find(cls::Density);
    if (density != spec.materials.end()) {
        s.line("# density " + render_decimal(density->second.magnitude) + " " +
               density->second.unit + " available but not used by the static form");
    }
    s.blank();

    std::vector<std::string> bc_names;
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        const plan::BcBinding& b = spec.dirichlet[i];
        std::string dn = suffixed("d", i);
        std::string bn = suffixed("bc", i);
        s.line(dn + " = " + vector_const(b.value) + note(b.value, b.property + " on " + b.surface));
        s.line(bn + " = DirichletBC(V, " + dn + ", boundaries, " +
               std::to_string(s.marker(b.surface)) + ")");
        bc_names.push_back(bn);
    }
    s.blank();

    std::vector<std::string> traction_terms;
    if (spec.neumann.empty()) {
        s.line("T = Constant((0, 0, 0))  # traction-free boundary");
        traction_terms.push_back("dot(T, v)*ds");
    } else {
        for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
            const plan::BcBinding& b = spec.neumann[i];
            std::string tn = suffixed("T", i);
            s.line(tn + " = " + vector_const(b.value) +
                   note(b.value, b.property + " on " + b.surface));
            traction_terms.push_back("dot(" + tn + ", v)*ds(" +
                                     std::to_string(s.marker(b.surface)) + ")");
        }
    }
    std::vector<std::string> body_terms;
    if (spec.volumetric.empty()) {
        s.line("f = Constant((0, 0, 0))  # no body force");
        body_terms.push_back("dot(f, v)*dx");
    } else {
        for (std::size_t i = 0; i < spec.volumetric.size(); ++i) {
            const plan::FieldBinding& b = spec.volumetric[i];
            std::string fn = suffixed("f", i);
            s.line(fn + " = " + vector_const(b.value) + note(b.value, b.property));
            body_terms.push_back("dot(" + fn + ", v)*dx");
        }
    }
    s.blank();

    s.line("def epsilon(u):");
    s.line("    return 0.5*(nabla_grad(u) + nabla_grad(u).T)");
    s.blank();
    s.line("def sigma(u):");
    s.line("    return lambda*nabla_div(u)*Identity(3) + 2*mu*epsilon(u)");
    s.blank();

    s.line("u = TrialFunction(V)");
    s.line("v = TestFunction(V)");
    s.line("a = inner(sigma(u), epsilon(v))*dx");
    s.line("L = " + join(body_terms, " + ") + " + " + join(traction_terms, " + "));
    s.blank();

    s.line("u = Function(V)");
    if (bc_names.size() == 1) {
        s.line("solve(a == L, u, " + bc_names[0] + ")");
    } else {
        s.line("bcs = [" + join(bc_names, ", ") + "]");
        s.line("solve(a == L, u, bcs)");
    }
    s.blank();
    s.line("File(\"" + spec.behavior + "_displacement.pvd\") << u");

    std::vector<std::string> manifest = {"lambda", "mu"};
    for (std::size_t i = 0; i < std::max<std::size_t>(spec.volumetric.size(), 1); ++i) {
        manifest.push_back(suffixed("f", i));
    }
    for (std::size_t i = 0; i < std::max<std::size_t>(spec.neumann.size(), 1); ++i) {
        manifest.push_back(suffixed("T", i));
    }
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        manifest.push_back(suffixed("d", i));
    }
    manifest.push_back("mesh");
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        manifest.push_back(suffixed("bc", i));
    }
    return finish(spec, s, mesh_file, facet_file, std::move(manifest));
}

ScriptArtifact emit_thermal(const plan::ProblemSpec& spec, const std::string& mesh_file,
                            const std::string& facet_file) {
    Script s(spec);

    emit_mesh_load(s, mesh_file, facet_file, true);
    s.blank();
    s.line("V = FunctionSpace(mesh, \"P\", 1)");
    s.blank();

    emit_time_setup(s, spec);
    s.blank();

    const QuantityValue& rho = material(spec, cls::Density);
    const QuantityValue& cp = material(spec, cls::SpecificHeatCapacity);
    const QuantityValue& kappa = material(spec, cls::ThermalConductivity);
    s.line("rho = " + scalar_const(rho) + note(rho, "density"));
    s.line("cp = " + scalar_const(cp) + note(cp, "specific heat capacity"));
    s.line("kappa = " + scalar_const(kappa) + note(kappa, "thermal conductivity"));
    s.blank();

    std::vector<std::string> bc_names;
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        const plan::BcBinding& b = spec.dirichlet[i];
        std::string un = suffixed("u_D", i);
        std::string bn = suffixed("bc", i);
        s.line(un + " = " + scalar_const(b.value) + note(b.value, b.property + " on " + b.surface));
        s.line(bn + " = DirichletBC(V, " + un + ", boundaries, " +
               std::to_string(s.marker(b.surface)) + ")");
        bc_names.push_back(bn);
    }
    s.blank();

    std::vector<std::string> extra_terms;
    std::string f0 = "f";
    if (spec.volumetric.empty()) {
        s.line("f = Constant(0.0)  # no volumetric heat source");
    } else {
        for (std::size_t i = 0; i < spec.volumetric.size(); ++i) {
            const plan::FieldBinding& b = spec.volumetric[i];
            std::string fn = suffixed("f", i);
            s.line(fn + " = " + scalar_const(b.value) + note(b.value, b.property));
            if (i > 0) {
                extra_terms.push_back(" - dt*" + fn + "*v*dx");
            }
        }
    }
    for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
        const plan::BcBinding& b = spec.neumann[i];
        std::string gn = suffixed("g", i);
        s.line(gn + " = " + scalar_const(b.value) + note(b.value, b.property + " on " + b.surface));
        extra_terms.push_back(" - dt*" + gn + "*v*ds(" + std::to_string(s.marker(b.surface)) + ")");
    }
    s.blank();

    if (spec.initial.empty()) {
        throw IllPosed("thermal spec for '" + spec.behavior + "' has no initial temperature");
    }
    const plan::FieldBinding& init = spec.initial.front();
    s.line("u_n = interpolate(" + scalar_const(init.value) + ", V)" +
           note(init.value, init.property));
    for (std::size_t i = 1; i < spec.initial.size(); ++i) {
        const plan::FieldBinding& b = spec.initial[i];
        s.line("# further initial value " + render_decimal(b.value.magnitude) + " " + b.value.unit +
               " (" + b.property + ") ignored; first binding wins");
    }
    s.blank();

    s.line("u = TrialFunction(V)");
    s.line("v = TestFunction(V)");
    std::string form = "F = rho*cp*u*v*dx + dt*kappa*dot(grad(u), grad(v))*dx"
                       " - (rho*cp*u_n + dt*" +
                       f0 + ")*v*dx";
    for (const std::string& t : extra_terms) form += t;
    s.line(form);
    s.line("a, L = lhs(F), rhs(F)");
    s.blank();

    s.line("u = Function(V)");
    s.line("t = 0");
    s.line("vtkfile = File(\"" + spec.behavior + "_temperature.pvd\")");
    std::string bc_arg;
    if (bc_names.size() == 1) {
        bc_arg = ", " + bc_names[0];
    } else if (bc_names.size() > 1) {
        s.line("bcs = [" + join(bc_names, ", ") + "]");
        bc_arg = ", bcs";
    }
    s.line("for n_step in range(num_steps):");
    s.line("    t += dt");
    s.line("    solve(a == L, u" + bc_arg + ")");
    s.line("    vtkfile << (u, t)");
    s.line("    u_n.assign(u)");

    std::vector<std::string> manifest = {"T", "rho", "cp", "kappa"};
    for (std::size_t i = 0; i < std::max<std::size_t>(spec.volumetric.size(), 1); ++i) {
        manifest.push_back(suffixed("f", i));
    }
    for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
        manifest.push_back(suffixed("g", i));
    }
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        manifest.push_back(suffixed("u_D", i));
    }
    manifest.push_back("mesh");
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        manifest.push_back(suffixed("bc", i));
    }
    manifest.push_back("u_n");
    return finish(spec, s, mesh_file, facet_file, std::move(manifest));
}

ScriptArtifact emit_fluid(const plan::ProblemSpec& spec, const std::string& mesh_file,
                          const std::string& facet_file) {
    Script s(spec);

    emit_mesh_load(s, mesh_file, facet_file, false);
    s.blank();
    s.line("V = VectorFunctionSpace(mesh, \"P\", 2)");
    s.line("Q = FunctionSpace(mesh, \"P\", 1)");
    s.blank();

    emit_time_setup(s, spec);
    s.blank();

    const QuantityValue& mu = material(spec, cls::Viscosity);
    const QuantityValue& rho = material(spec, cls::Density);
    s.line("mu = " + scalar_const(mu) + note(mu, "dynamic viscosity"));
    s.line("rho = " + scalar_const(rho) + note(rho, "density"));

    std::vector<std::string> body_terms;
    if (spec.volumetric.empty()) {
        s.line("f = Constant((0, 0, 0))  # no body force");
        body_terms.push_back(" - dot(f, v)*dx");
    } else {
        for (std::size_t i = 0; i < spec.volumetric.size(); ++i) {
            const plan::FieldBinding& b = spec.volumetric[i];
            std::string fn = suffixed("f", i);
            s.line(fn + " = " + vector_const(b.value) + note(b.value, b.property));
            body_terms.push_back(" - dot(" + fn + ", v)*dx");
        }
    }
    s.blank();

    // Velocity values act as wall conditions; pressure values pin the inflow
    // and outflow ends, in sorted surface order.
    auto pressure_name = [&](std::size_t i) {
        return i == 0 ? std::string("p_inflow") : suffixed("p_outflow", i - 1);
    };
    auto pressure_bc_name = [&](std::size_t i) {
        return i == 0 ? std::string("bcp_inflow") : suffixed("bcp_outflow", i - 1);
    };
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        const plan::BcBinding& b = spec.dirichlet[i];
        s.line(suffixed("u_walls", i) + " = " + vector_const(b.value) +
               note(b.value, b.property + " on " + b.surface));
    }
    for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
        const plan::BcBinding& b = spec.neumann[i];
        s.line(pressure_name(i) + " = " + scalar_const(b.value) +
               note(b.value, b.property + " on " + b.surface));
    }
    s.blank();
    std::vector<std::string> bcu_names;
    std::vector<std::string> bcp_names;
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        const plan::BcBinding& b = spec.dirichlet[i];
        std::string bn = suffixed("bcu_noslip", i);
        s.line(bn + " = DirichletBC(V, " + suffixed("u_walls", i) + ", boundaries, " +
               std::to_string(s.marker(b.surface)) + ")");
        bcu_names.push_back(bn);
    }
    for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
        const plan::BcBinding& b = spec.neumann[i];
        std::string bn = pressure_bc_name(i);
        s.line(bn + " = DirichletBC(Q, " + pressure_name(i) + ", boundaries, " +
               std::to_string(s.marker(b.surface)) + ")");
        bcp_names.push_back(bn);
    }
    s.line("bcu = [" + join(bcu_names, ", ") + "]");
    s.line("bcp = [" + join(bcp_names, ", ") + "]");
    s.blank();

    s.line("u = TrialFunction(V)");
    s.line("v = TestFunction(V)");
    s.line("p = TrialFunction(Q)");
    s.line("q = TestFunction(Q)");
    s.blank();

    if (spec.initial.empty()) {
        s.line("u_n = Function(V)");
    } else {
        const plan::FieldBinding& init = spec.initial.front();
        s.line("u_n = interpolate(" + vector_const(init.value) + ", V)" +
               note(init.value, init.property));
        for (std::size_t i = 1; i < spec.initial.size(); ++i) {
            const plan::FieldBinding& b = spec.initial[i];
            s.line("# further initial value " + render_decimal(b.value.magnitude) + " " +
                   b.value.unit + " (" + b.property + ") ignored; first binding wins");
        }
    }
    s.line("u_ = Function(V)");
    s.line("p_n = Function(Q)");
    s.line("p_ = Function(Q)");
    s.blank();

    s.line("U = 0.5*(u_n + u)");
    s.line("n = FacetNormal(mesh)");
    s.line("k = Constant(dt)");
    s.blank();
    s.line("def epsilon(u):");
    s.line("    return sym(nabla_grad(u))");
    s.blank();
    s.line("def sigma(u, p):");
    s.line("    return 2*mu*epsilon(u) - p*Identity(len(u))");
    s.blank();

    s.line("F1 = rho*dot((u - u_n) / k, v)*dx \\");
    s.line("    + rho*dot(dot(u_n, nabla_grad(u_n)), v)*dx \\");
    s.line("    + inner(sigma(U, p_n), epsilon(v))*dx \\");
    s.line("    + dot(p_n*n, v)*ds - dot(mu*nabla_grad(U)*n, v)*ds \\");
    std::string tail = "   ";
    for (const std::string& t : body_terms) tail += t;
    s.line(tail);
    s.line("a1 = lhs(F1)");
    s.line("L1 = rhs(F1)");
    s.blank();
    s.line("a2 = dot(nabla_grad(p), nabla_grad(q))*dx");
    s.line("L2 = dot(nabla_grad(p_n), nabla_grad(q))*dx - (1/k)*div(u_)*q*dx");
    s.blank();
    s.line("a3 = dot(u, v)*dx");
    s.line("L3 = dot(u_, v)*dx - k*dot(nabla_grad(p_ - p_n), v)*dx");
    s.blank();
    s.line("A1 = assemble(a1)");
    s.line("A2 = assemble(a2)");
    s.line("A3 = assemble(a3)");
    s.blank();
    s.line("[bc.apply(A1) for bc in bcu]");
    s.line("[bc.apply(A2) for bc in bcp]");
    s.blank();
    s.line("vtkfile_u = File(\"" + spec.behavior + "_velocity.pvd\")");
    s.line("vtkfile_p = File(\"" + spec.behavior + "_pressure.pvd\")");
    s.blank();
    s.line("t = 0");
    s.line("for n_step in range(num_steps):");
    s.line("    t += dt");
    s.blank();
    s.line("    b1 = assemble(L1)");
    s.line("    [bc.apply(b1) for bc in bcu]");
    s.line("    solve(A1, u_.vector(), b1)");
    s.blank();
    s.line("    b2 = assemble(L2)");
    s.line("    [bc.apply(b2) for bc in bcp]");
    s.line("    solve(A2, p_.vector(), b2)");
    s.blank();
    s.line("    b3 = assemble(L3)");
    s.line("    solve(A3, u_.vector(), b3)");
    s.blank();
    s.line("    vtkfile_u << (u_, t)");
    s.line("    vtkfile_p << (p_, t)");
    s.blank();
    s.line("    u_n.assign(u_)");
    s.line("    p_n.assign(p_)");

    std::vector<std::string> manifest = {"T", "mu", "rho"};
    for (std::size_t i = 0; i < std::max<std::size_t>(spec.volumetric.size(), 1); ++i) {
        manifest.push_back(suffixed("f", i));
    }
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        manifest.push_back(suffixed("u_walls", i));
    }
    for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
        manifest.push_back(pressure_name(i));
    }
    manifest.push_back("mesh");
    for (std::size_t i = 0; i < spec.dirichlet.size(); ++i) {
        manifest.push_back(suffixed("bcu_noslip", i));
    }
    for (std::size_t i = 0; i < spec.neumann.size(); ++i) {
        manifest.push_back(pressure_bc_name(i));
    }
    if (!spec.initial.empty()) {
        manifest.push_back("u_n");
    }
    return finish(spec, s, mesh_file, facet_file, std::move(manifest));
}

} // namespace

ScriptArtifact emit_script(const plan::ProblemSpec& spec, const std::string& mesh_file,
                           const std::string& facet_file) {
    switch (spec.kind) {
    case plan::PhysicsKind::Structural: return emit_structural(spec, mesh_file, facet_file);
    case plan::PhysicsKind::Thermal: return emit_thermal(spec, mesh_file, facet_file);
    case plan::PhysicsKind::Fluid: return emit_fluid(spec, mesh_file, facet_file);
    }
    throw IllPosed("unreachable physics kind");
}

} // namespace pso::fenics
