from fenics import *

# structural_behavior: structural problem on 'pipe'
# data items: lambda, mu, f, T, d, mesh, bc

mesh = Mesh("pipe_box.xml")
mvc = MeshValueCollection("size_t", mesh, 2)
File("pipe_box_facets.xml") >> mvc
boundaries = MeshFunction("size_t", mesh, mvc)
ds = Measure("ds", domain=mesh, subdomain_data=boundaries)

V = VectorFunctionSpace(mesh, "P", 1)

lambda = Constant(1.1e+11)  # Pa, elastic modulus
mu = Constant(4.4e+10)  # Pa, shear modulus
# density 7200.0 kg/m3 available but not used by the static form

d = Constant((0, 0, 0.0))  # m, disp_psi1 on psi1
bc = DirichletBC(V, d, boundaries, 2)

T = Constant((0, 0, -12500.0))  # Pa, dforce_psi2 on psi2
f = Constant((0, 0, -70632.0))  # N/m3, bodyforce_pipe

def epsilon(u):
    return 0.5*(nabla_grad(u) + nabla_grad(u).T)

def sigma(u):
    return lambda*nabla_div(u)*Identity(3) + 2*mu*epsilon(u)

u = TrialFunction(V)
v = TestFunction(V)
a = inner(sigma(u), epsilon(v))*dx
L = dot(f, v)*dx + dot(T, v)*ds(3)

u = Function(V)
solve(a == L, u, bc)

File("structural_behavior_displacement.pvd") << u
