from fenics import *

# flow_behavior: fluid problem on 'fluid'
# data items: T, mu, rho, f, u_walls, p_inflow, p_outflow, mesh, bcu_noslip, bcp_inflow, bcp_outflow

mesh = Mesh("fluid_box.xml")
mvc = MeshValueCollection("size_t", mesh, 2)
File("fluid_box_facets.xml") >> mvc
boundaries = MeshFunction("size_t", mesh, mvc)

V = VectorFunctionSpace(mesh, "P", 2)
Q = FunctionSpace(mesh, "P", 1)

T = 10.0  # s, flow_duration
num_steps = 50
dt = T / num_steps

mu = Constant(0.092)  # Pa*s, dynamic viscosity
rho = Constant(872.0)  # kg/m3, density
f = Constant((0, 0, -8554.3))  # N/m3, bodyforce_fluid

u_walls = Constant((0, 0, 0.0))  # m/s, velocity_fsw on fsw
p_inflow = Constant(101425.0)  # Pa, pressure_fsi on fsi
p_outflow = Constant(101325.0)  # Pa, pressure_fso on fso

bcu_noslip = DirichletBC(V, u_walls, boundaries, 3)
bcp_inflow = DirichletBC(Q, p_inflow, boundaries, 1)
bcp_outflow = DirichletBC(Q, p_outflow, boundaries, 2)
bcu = [bcu_noslip]
bcp = [bcp_inflow, bcp_outflow]

u = TrialFunction(V)
v = TestFunction(V)
p = TrialFunction(Q)
q = TestFunction(Q)

u_n = Function(V)
u_ = Function(V)
p_n = Function(Q)
p_ = Function(Q)

U = 0.5*(u_n + u)
n = FacetNormal(mesh)
k = Constant(dt)

def epsilon(u):
    return sym(nabla_grad(u))

def sigma(u, p):
    return 2*mu*epsilon(u) - p*Identity(len(u))

F1 = rho*dot((u - u_n) / k, v)*dx \
    + rho*dot(dot(u_n, nabla_grad(u_n)), v)*dx \
    + inner(sigma(U, p_n), epsilon(v))*dx \
    + dot(p_n*n, v)*ds - dot(mu*nabla_grad(U)*n, v)*ds \
    - dot(f, v)*dx
a1 = lhs(F1)
L1 = rhs(F1)

a2 = dot(nabla_grad(p), nabla_grad(q))*dx
L2 = dot(nabla_grad(p_n), nabla_grad(q))*dx - (1/k)*div(u_)*q*dx

a3 = dot(u, v)*dx
L3 = dot(u_, v)*dx - k*dot(nabla_grad(p_ - p_n), v)*dx

A1 = assemble(a1)
A2 = assemble(a2)
A3 = assemble(a3)

[bc.apply(A1) for bc in bcu]
[bc.apply(A2) for bc in bcp]

vtkfile_u = File("flow_behavior_velocity.pvd")
vtkfile_p = File("flow_behavior_pressure.pvd")

t = 0
for n_step in range(num_steps):
    t += dt

    b1 = assemble(L1)
    [bc.apply(b1) for bc in bcu]
    solve(A1, u_.vector(), b1)

    b2 = assemble(L2)
    [bc.apply(b2) for bc in bcp]
    solve(A2, p_.vector(), b2)

    b3 = assemble(L3)
    solve(A3, u_.vector(), b3)

    vtkfile_u << (u_, t)
    vtkfile_p << (p_, t)

    u_n.assign(u_)
    p_n.assign(p_)
