import clr
clr.AddReference('RevitAPI')
from Autodesk.Revit.DB import (
    BuiltInCategory, FamilySymbol, FilteredElementCollector, Level, Line,
    Transaction, Wall, WallType, XYZ,
)
from Autodesk.Revit.DB.Structure import StructuralType

doc = __revit__.ActiveUIDocument.Document
level = FilteredElementCollector(doc).OfClass(Level).FirstElement()

from Autodesk.Revit.DB import ElementTransformUtils

# Extends the wall-creation pattern to freestanding families: each
# item uses the furniture symbol whose name matches, or the first
# available symbol, rotated from its default facing.
symbols = list(FilteredElementCollector(doc).OfClass(FamilySymbol).OfCategory(BuiltInCategory.OST_Furniture))
by_name = {s.FamilyName: s for s in symbols}

t = Transaction(doc, 'Place furniture')
t.Start()
symbol = by_name.get('Sofa', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(20.0, 1.5, 0.0), symbol, StructuralType.NonStructural)
axis = Line.CreateBound(XYZ(20.0, 1.5, 0.0), XYZ(20.0, 1.5, 1.0))
ElementTransformUtils.RotateElement(doc, inst.Id, axis, 3.141593)
symbol = by_name.get('TVUnit', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(0.75, 12.0, 0.0), symbol, StructuralType.NonStructural)
axis = Line.CreateBound(XYZ(0.75, 12.0, 0.0), XYZ(0.75, 12.0, 1.0))
ElementTransformUtils.RotateElement(doc, inst.Id, axis, 1.570796)
symbol = by_name.get('DiningTable', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(21.5, 25.0, 0.0), symbol, StructuralType.NonStructural)
symbol = by_name.get('Bench', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(27.75, 25.0, 0.0), symbol, StructuralType.NonStructural)
axis = Line.CreateBound(XYZ(27.75, 25.0, 0.0), XYZ(27.75, 25.0, 1.0))
ElementTransformUtils.RotateElement(doc, inst.Id, axis, -1.570796)
symbol = by_name.get('Sofa', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(13.5, 24.0, 0.0), symbol, StructuralType.NonStructural)
axis = Line.CreateBound(XYZ(13.5, 24.0, 0.0), XYZ(13.5, 24.0, 1.0))
ElementTransformUtils.RotateElement(doc, inst.Id, axis, -1.570796)
symbol = by_name.get('OfficeDesk', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(6.25, 33.0, 0.0), symbol, StructuralType.NonStructural)
axis = Line.CreateBound(XYZ(6.25, 33.0, 0.0), XYZ(6.25, 33.0, 1.0))
ElementTransformUtils.RotateElement(doc, inst.Id, axis, 1.570796)
symbol = by_name.get('Bed', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(24.5, 32.5, 0.0), symbol, StructuralType.NonStructural)
axis = Line.CreateBound(XYZ(24.5, 32.5, 0.0), XYZ(24.5, 32.5, 1.0))
ElementTransformUtils.RotateElement(doc, inst.Id, axis, 3.141593)
symbol = by_name.get('Wardrobe', symbols[0])
if not symbol.IsActive:
    symbol.Activate()
inst = doc.Create.NewFamilyInstance(XYZ(25.0, 39.0, 0.0), symbol, StructuralType.NonStructural)
t.Commit()
