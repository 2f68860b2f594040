from setuptools import setup, find_packages

setup(
   name='dpbokeh',
   version='0.1',
   description='Synthetic defocus blur, dual-pixel view pairs and rotated-kernel image motion from an all-in-focus image and its depth map.',
   packages=find_packages(exclude=['tests']),
   install_requires=['numpy', 'scipy', 'pandas', 'tqdm', 'matplotlib', 'imageio', 'Pillow>=9.1'],
   extras_require={'test': ['pytest']},
   entry_points={'console_scripts': ['dpbokeh=dpbokeh.cli.main:main']},
   zip_safe=False
)
